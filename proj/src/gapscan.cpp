#include "primecert/gapscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "primecert/errors.hpp"

namespace primecert {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 pow_mod(u64 base, u64 exp, u64 n) {
  u64 result = 1;
  base %= n;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

constexpr u64 kBaseLimit = 1ULL << 24;

const std::vector<std::uint32_t>& base_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kBaseLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (u64 i = 3; i <= kBaseLimit; i += 2) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= kBaseLimit; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd candidates in [lo, hi] after crossing off multiples of the odd base
// primes up to min(sqrt(hi), limit). When that stops short of sqrt(hi) the
// survivors are confirmed by Miller-Rabin.
class OddSegment {
 public:
  OddSegment(u64 lo, u64 hi, u64 limit = kBaseLimit) : first_(lo | 1) {
    if (first_ < lo || first_ > hi) return;
    flags_.assign((hi - first_) / 2 + 1, 1);
    const u64 root = std::min(isqrt(hi), std::min(limit, kBaseLimit));
    exact_ = isqrt(hi) <= root;
    for (std::uint32_t p : base_primes()) {
      if (p > root) break;
      u64 pp = static_cast<u64>(p) * p;
      u64 start;
      if (pp >= first_) {
        start = pp;
      } else {
        u64 r = first_ % p;
        start = r == 0 ? first_ : first_ + (p - r);
        if (start % 2 == 0) start += p;
      }
      for (u64 j = (start - first_) / 2; j < flags_.size(); j += p) flags_[j] = 0;
    }
    if (first_ == 1) flags_[0] = 0;
  }

  template <class F>
  void for_each_prime(F&& f) const {
    for (std::size_t j = 0; j < flags_.size(); ++j) {
      if (!flags_[j]) continue;
      u64 n = first_ + 2 * j;
      if (exact_ || is_prime_u64(n)) {
        if (!f(n)) return;
      }
    }
  }

 private:
  u64 first_;
  bool exact_ = true;
  std::vector<std::uint8_t> flags_;
};

struct Summary {
  u64 count = 0;
  std::optional<u64> first, last;
  u64 max_gap = 0;
  u64 location = 0;

  void add(u64 p) {
    if (last) {
      u64 gap = p - *last;
      if (gap > max_gap) {
        max_gap = gap;
        location = *last;
      }
    } else {
      first = p;
    }
    last = p;
    ++count;
  }

  // Appends a summary of primes that all exceed this one's; ties keep the
  // earlier location.
  void append(const Summary& next) {
    if (!next.first) return;
    if (last) {
      u64 gap = *next.first - *last;
      if (gap > max_gap) {
        max_gap = gap;
        location = *last;
      }
    } else {
      first = next.first;
    }
    if (next.max_gap > max_gap) {
      max_gap = next.max_gap;
      location = next.location;
    }
    last = next.last;
    count += next.count;
  }
};

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

GapReport sieve_gaps(std::uint64_t lo, std::uint64_t hi, unsigned threads) {
  if (lo < 1) throw std::invalid_argument("sieve range must start at 1 or above");
  if (hi < lo) throw std::invalid_argument("sieve range is empty");
  if (hi - lo > kMaxSieveSpan) throw std::invalid_argument("sieve range too large (limit 1e10 per call)");

  Summary total;
  if (lo <= 2 && 2 <= hi) total.add(2);
  const u64 segments = (hi - lo) / kSegmentSize + 1;
  auto parts = detail::parallel_map(segments, detail::worker_count(threads), [&](std::size_t i) {
    u64 s = lo + i * kSegmentSize;
    u64 e = (hi - s < kSegmentSize) ? hi : s + kSegmentSize - 1;
    Summary part;
    OddSegment(s, e).for_each_prime([&](u64 p) {
      part.add(p);
      return true;
    });
    return part;
  });
  for (const auto& part : parts) total.append(part);
  return {lo, hi, total.max_gap, total.location, total.count, total.first, total.last};
}

IntervalCheck check_interval(std::uint64_t x, const BigRational& Delta) {
  if (Delta <= 0) throw ConstraintError(ConstraintCode::DOMAIN, "Delta must be positive");
  BigRational width = BigRational(BigInt(std::to_string(x))) / Delta;
  if (width < 1) throw ConstraintError(ConstraintCode::DOMAIN, "need x / Delta >= 1");
  BigInt low = floor(BigRational(BigInt(std::to_string(x))) - width) + 1;
  IntervalCheck out{static_cast<u64>(std::stoull(low.get_str())), x - 1, false, std::nullopt};
  if (x == 0 || out.lo > out.hi) return out;

  if (out.lo <= 2 && 2 <= out.hi) {
    out.witness = 2;
  }
  u64 window = 1ULL << 12;
  for (u64 s = out.lo; !out.witness && s <= out.hi; s += window, window = std::min<u64>(window * 2, 1ULL << 20)) {
    u64 e = (out.hi - s < window) ? out.hi : s + window - 1;
    OddSegment(s, e, 1ULL << 16).for_each_prime([&](u64 p) {
      out.witness = p;
      return false;
    });
    if (e == out.hi) break;
  }
  if (out.witness && !is_prime_u64(*out.witness)) {
    throw std::logic_error("sieve produced a composite witness");
  }
  out.contains_prime = out.witness.has_value();
  return out;
}

GoldbachExtent goldbach_extent(const BigInt& N, const BigInt& Delta) {
  GoldbachExtent out;
  out.N = N;
  out.Delta = Delta;
  out.product = N * Delta;
  std::string digits = out.product.get_str();
  out.leading = digits.substr(0, 1);
  if (digits.size() > 1) out.leading += "." + digits.substr(1, 4);
  out.leading += "e" + std::to_string(digits.size() - 1);

  auto prime = [](const BigInt& n) {
    return n > 0 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
  };
  out.anchors_prime = prime(211) && prime(313) && prime(N - 209) && prime(N - 309);
  out.statement = "every odd number greater than 5 and smaller than " + out.product.get_str() +
                  " is the sum of at most three primes: prime gaps up to " + out.product.get_str() +
                  " are at most " + N.get_str() + " when (x - x/" + Delta.get_str() +
                  ", x] holds a prime for every x >= " + N.get_str();
  return out;
}

}  // namespace primecert
