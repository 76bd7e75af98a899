#pragma once

// Desk-scale prime sieving for gap checks, and the extent arithmetic of the
// ternary Goldbach application.

#include <cstdint>
#include <optional>
#include <string>

#include "primecert/numerics.hpp"

namespace primecert {

inline constexpr std::uint64_t kMaxSieveSpan = 10'000'000'000ULL;
inline constexpr std::uint64_t kSegmentSize = 1ULL << 24;

// Deterministic for every 64-bit n.
bool is_prime_u64(std::uint64_t n);

struct GapReport {
  std::uint64_t lo;
  std::uint64_t hi;
  std::uint64_t max_gap;           // 0 when fewer than two primes
  std::uint64_t max_gap_location;  // prime that starts the gap
  std::uint64_t prime_count;
  std::optional<std::uint64_t> first_prime;
  std::optional<std::uint64_t> last_prime;
};

// Primes in the closed range [lo, hi]; lo >= 1, hi - lo <= kMaxSieveSpan.
GapReport sieve_gaps(std::uint64_t lo, std::uint64_t hi, unsigned threads = 0);

struct IntervalCheck {
  std::uint64_t lo;  // smallest integer > x (1 - 1/Delta)
  std::uint64_t hi;  // x - 1
  bool contains_prime;
  std::optional<std::uint64_t> witness;
};

// Looks for a prime in the open interval (x (1 - 1/Delta), x).
IntervalCheck check_interval(std::uint64_t x, const BigRational& Delta);

struct GoldbachExtent {
  BigInt N;
  BigInt Delta;
  BigInt product;
  std::string leading;  // five significant digits, e.g. "7.8647e27"
  bool anchors_prime;   // 211, 313, N - 209, N - 309 all prime
  std::string statement;
};

GoldbachExtent goldbach_extent(const BigInt& N = BigInt("4000000000000000000"),
                               const BigInt& Delta = BigInt(1966196911));

}  // namespace primecert
