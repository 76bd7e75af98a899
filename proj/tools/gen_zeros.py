#!/usr/bin/env python3
# Writes the first N ordinates of the nontrivial zeta zeros, one per line,
# in the same plain-text layout as Odlyzko's published tables.
import argparse
import mpmath


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("count", type=int)
    parser.add_argument("--digits", type=int, default=12)
    args = parser.parse_args()
    mpmath.mp.dps = args.digits + 8
    print(f"# first {args.count} zeta zero ordinates (mpmath.zetazero)")
    for n in range(1, args.count + 1):
        print(mpmath.nstr(mpmath.zetazero(n).imag, args.digits + 3, strip_zeros=False))


if __name__ == "__main__":
    main()
