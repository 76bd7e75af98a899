#pragma once

// Certified arithmetic: exact rationals (GMP) and outward-rounded intervals
// (MPFR). Every Interval encloses the exact real it stands for; its lower end
// is the Down-directed value, its upper end the Up-directed one.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

namespace primecert {

using BigInt = mpz_class;
using BigRational = mpq_class;
using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 192;
inline constexpr Precision kMinPrecision = 64;
// Beyond this the backing mantissas stop being practical; treated as overflow.
inline constexpr Precision kMaxPrecision = Precision{1} << 20;

enum class Direction { Down, Up };
enum class Sign { Positive, Negative, Unknown };

std::string_view to_string(Direction d);
std::string_view to_string(Sign s);

// ---- exact helpers --------------------------------------------------------

// Accepts integers, decimals, scientific notation ("4.589e-9") and "n/d".
BigRational parse_rational(std::string_view text);
// Exact decimal when the expansion terminates, otherwise "n/d".
std::string format_rational(const BigRational& q);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
BigRational pow(const BigRational& base, unsigned long exponent);
BigInt floor(const BigRational& q);
BigInt ceil(const BigRational& q);
// Smallest e with |q| <= 2^e (0 for q == 0).
long log2_ceil(const BigRational& q);

void check_precision(Precision p);

// Runs `computation(p)` after validating p. The computation receives the
// precision explicitly; there is no hidden global state, so identical inputs
// and precision give bit-identical outputs.
template <class F>
auto with_precision(Precision p, F&& computation) -> std::invoke_result_t<F, Precision> {
  check_precision(p);
  return std::invoke(std::forward<F>(computation), p);
}

// ---- MPFR value -----------------------------------------------------------

class Real {
 public:
  explicit Real(Precision p);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  Precision precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

struct DirectedValue {
  Real value;
  Direction direction;

  Precision precision() const noexcept { return value.precision(); }
  double to_double() const { return value.to_double(direction == Direction::Up ? MPFR_RNDU : MPFR_RNDD); }
  // Decimal text rounded in the value's own direction, so the printed
  // number is still a valid bound.
  std::string to_string(int significant_digits = 17) const;
};

// Positive only if the Down bound is > 0; Negative only if the Up bound is < 0.
Sign certified_sign(const DirectedValue& lower, const DirectedValue& upper);

// ---- interval -------------------------------------------------------------

class Interval {
 public:
  explicit Interval(Precision p);  // [0, 0]
  Interval(Real lo, Real hi);

  static Interval point(long value, Precision p);
  static Interval from(const BigRational& q, Precision p);
  static Interval from(const BigInt& z, Precision p);
  static Interval from_double(double value, Precision p);
  static Interval pi(Precision p);
  static Interval hull(const Interval& a, const Interval& b);

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  DirectedValue down() const { return {lo_, Direction::Down}; }
  DirectedValue up() const { return {hi_, Direction::Up}; }
  Precision precision() const noexcept { return std::max(lo_.precision(), hi_.precision()); }

  double mid() const;
  bool certainly_positive() const noexcept { return lo_.sign() > 0; }
  bool certainly_negative() const noexcept { return hi_.sign() < 0; }
  bool certainly_nonnegative() const noexcept { return lo_.sign() >= 0; }
  bool contains_zero() const noexcept { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_.get(), other.lo_.get()) != 0; }
  bool contains(const BigRational& q) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

 private:
  Real lo_;
  Real hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

Interval operator+(const Interval& a, const BigRational& b);
Interval operator-(const Interval& a, const BigRational& b);
Interval operator-(const BigRational& a, const Interval& b);
Interval operator*(const Interval& a, const BigRational& b);
Interval operator/(const Interval& a, const BigRational& b);
Interval operator/(const BigRational& a, const Interval& b);

Interval exp(const Interval& x);
Interval expm1(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval sqrt(const Interval& x);
Interval square(const Interval& x);
Interval pow(const Interval& base, long exponent);
// base must be certainly positive.
Interval pow(const Interval& base, const Interval& exponent);
Interval abs(const Interval& x);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
// max(x, 0), used where a quantity is known to be nonnegative.
Interval clamp_nonnegative(const Interval& x);

Sign certified_sign(const Interval& x);

// Re-rounds an enclosure outward to precision p.
Interval round_outward(const Interval& x, Precision p);

}  // namespace primecert
