#include "primecert/numerics.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "primecert/errors.hpp"

namespace primecert {

std::string_view to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Unknown: break;
  }
  return "unknown";
}

std::string_view to_string(ConstraintCode code) {
  switch (code) {
    case ConstraintCode::M_RANGE: return "M_RANGE";
    case ConstraintCode::DELTA_RANGE: return "DELTA_RANGE";
    case ConstraintCode::A_RANGE: return "A_RANGE";
    case ConstraintCode::X0_FLOOR: return "X0_FLOOR";
    case ConstraintCode::T1_RANGE: return "T1_RANGE";
    case ConstraintCode::SIGMA0_ROW: return "SIGMA0_ROW";
    case ConstraintCode::S5_PRECONDITION: return "S5_PRECONDITION";
    case ConstraintCode::LOG_RATIO: return "LOG_RATIO";
    case ConstraintCode::DOMAIN: break;
  }
  return "DOMAIN";
}

// ---- exact helpers --------------------------------------------------------

BigRational parse_rational(std::string_view text) {
  auto fail = [&]() -> BigRational { throw DataError("unparsable number '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigRational num = parse_rational(s.substr(0, slash));
    BigRational den = parse_rational(s.substr(slash + 1));
    if (den == 0) return fail();
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long decimals = 0;
  bool seen_point = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_point) return fail();
      seen_point = true;
    } else {
      digits.push_back(s[i]);
      if (seen_point) ++decimals;
    }
  }
  if (digits.empty()) return fail();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return fail();
    ++i;
    std::string exp_text = s.substr(i);
    if (exp_text.empty()) return fail();
    std::size_t j = (exp_text[0] == '+' || exp_text[0] == '-') ? 1 : 0;
    if (j == exp_text.size()) return fail();
    for (std::size_t k = j; k < exp_text.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(exp_text[k]))) return fail();
    }
    if (exp_text.size() > 9) return fail();
    exponent = std::stol(exp_text);
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - decimals;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  BigRational out = shift >= 0 ? BigRational(mantissa * ten_pow) : BigRational(mantissa, ten_pow);
  out.canonicalize();
  return out;
}

std::string format_rational(const BigRational& q) {
  BigInt den = q.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return q.get_str();
  unsigned long scale = std::max(twos, fives);
  if (scale == 0) return q.get_num().get_str();
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, scale);
  BigInt scaled = q.get_num() * ten_pow / q.get_den();
  bool negative = scaled < 0;
  std::string digits = BigInt(abs(scaled)).get_str();
  if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
  digits.insert(digits.size() - scale, ".");
  return negative ? "-" + digits : digits;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigRational pow(const BigRational& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return BigRational(num, den);  // already reduced: powers of coprime integers
}

BigInt floor(const BigRational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

BigInt ceil(const BigRational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

long log2_ceil(const BigRational& q) {
  if (q == 0) return 0;
  long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  long e = num_bits - den_bits + 1;
  BigRational magnitude = abs(q);
  auto power = [](long k) {
    BigRational out(1);
    if (k >= 0) mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), k);
    else mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), -k);
    return out;
  };
  while (magnitude <= power(e - 1)) --e;
  return e;
}

void check_precision(Precision p) {
  if (p < kMinPrecision) {
    throw PrecisionError("precision " + std::to_string(p) + " below minimum " + std::to_string(kMinPrecision));
  }
  if (p > kMaxPrecision || p > MPFR_PREC_MAX) {
    throw PrecisionError("precision overflow: " + std::to_string(p) + " bits");
  }
}

// ---- Real -----------------------------------------------------------------

Real::Real(Precision p) {
  mpfr_init2(value_, p);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);  // exact: same precision
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::string DirectedValue::to_string(int significant_digits) const {
  char* buffer = nullptr;
  mpfr_rnd_t rnd = direction == Direction::Up ? MPFR_RNDU : MPFR_RNDD;
  mpfr_asprintf(&buffer, "%.*R*e", std::max(0, significant_digits - 1), rnd, value.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Sign certified_sign(const DirectedValue& lower, const DirectedValue& upper) {
  if (lower.direction != Direction::Down || upper.direction != Direction::Up) {
    throw std::invalid_argument("certified_sign expects a Down and an Up value");
  }
  if (lower.value.sign() > 0) return Sign::Positive;
  if (upper.value.sign() < 0) return Sign::Negative;
  return Sign::Unknown;
}

// ---- Interval -------------------------------------------------------------

namespace {

Precision joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Image of a nondecreasing function.
Interval monotone(const Interval& x, Unary f) {
  Real lo(x.precision()), hi(x.precision());
  f(lo.get(), x.lo().get(), MPFR_RNDD);
  f(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

// Outward hull of f over the four endpoint pairs (valid for * and / when
// the divisor excludes zero).
Interval corners(const Interval& a, const Interval& b, Binary f) {
  Precision p = joint(a, b);
  std::array<mpfr_srcptr, 2> as{a.lo().get(), a.hi().get()};
  std::array<mpfr_srcptr, 2> bs{b.lo().get(), b.hi().get()};
  Real lo(p), hi(p), t(p);
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      f(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      f(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

}  // namespace

Interval::Interval(Precision p) : lo_(p), hi_(p) {}

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) throw std::domain_error("interval endpoint is NaN");
  if (mpfr_greater_p(lo_.get(), hi_.get())) throw std::logic_error("interval with lo > hi");
}

Interval Interval::point(long value, Precision p) {
  Real lo(p), hi(p);
  mpfr_set_si(lo.get(), value, MPFR_RNDD);
  mpfr_set_si(hi.get(), value, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from(const BigRational& q, Precision p) {
  Real lo(p), hi(p);
  mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from(const BigInt& z, Precision p) {
  Real lo(p), hi(p);
  mpfr_set_z(lo.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), z.get_mpz_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_double(double value, Precision p) {
  Real lo(p), hi(p);
  mpfr_set_d(lo.get(), value, MPFR_RNDD);
  mpfr_set_d(hi.get(), value, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::pi(Precision p) {
  Real lo(p), hi(p);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Precision p = joint(a, b);
  Real lo(p), hi(p);
  mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

double Interval::mid() const {
  Real m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

bool Interval::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Interval Interval::operator-() const {
  Real lo(hi_.precision()), hi(lo_.precision());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

Interval operator+(const Interval& a, const Interval& b) {
  Precision p = joint(a, b);
  Real lo(p), hi(p);
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  Precision p = joint(a, b);
  Real lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Interval& b) { return corners(a, b, mpfr_mul); }

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  return corners(a, b, mpfr_div);
}

Interval operator+(const Interval& a, const BigRational& b) { return a + Interval::from(b, a.precision()); }
Interval operator-(const Interval& a, const BigRational& b) { return a - Interval::from(b, a.precision()); }
Interval operator-(const BigRational& a, const Interval& b) { return Interval::from(a, b.precision()) - b; }
Interval operator*(const Interval& a, const BigRational& b) { return a * Interval::from(b, a.precision()); }
Interval operator/(const Interval& a, const BigRational& b) { return a / Interval::from(b, a.precision()); }
Interval operator/(const BigRational& a, const Interval& b) { return Interval::from(a, b.precision()) / b; }

Interval exp(const Interval& x) { return monotone(x, mpfr_exp); }
Interval expm1(const Interval& x) { return monotone(x, mpfr_expm1); }

Interval log(const Interval& x) {
  if (!x.certainly_positive()) throw std::domain_error("log of an interval not certainly positive");
  return monotone(x, mpfr_log);
}

Interval log1p(const Interval& x) {
  if (mpfr_cmp_si(x.lo().get(), -1) <= 0) throw std::domain_error("log1p argument not certainly > -1");
  return monotone(x, mpfr_log1p);
}

Interval sqrt(const Interval& x) {
  if (!x.certainly_nonnegative()) throw std::domain_error("sqrt of an interval not certainly nonnegative");
  return monotone(x, mpfr_sqrt);
}

Interval square(const Interval& x) { return pow(x, 2); }

Interval pow(const Interval& base, long exponent) {
  Precision p = base.precision();
  if (exponent == 0) return Interval::point(1, p);
  if (exponent < 0) return Interval::point(1, p) / pow(base, -exponent);
  auto up_pow = [&](mpfr_srcptr v, mpfr_rnd_t rnd) {
    Real r(p);
    mpfr_pow_ui(r.get(), v, static_cast<unsigned long>(exponent), rnd);
    return r;
  };
  bool odd = exponent % 2 != 0;
  if (base.certainly_nonnegative() || odd) {
    // x^n is nondecreasing on [0, inf) and, for odd n, on all of R.
    return {up_pow(base.lo().get(), MPFR_RNDD), up_pow(base.hi().get(), MPFR_RNDU)};
  }
  if (base.hi().sign() <= 0) {
    return {up_pow(base.hi().get(), MPFR_RNDD), up_pow(base.lo().get(), MPFR_RNDU)};
  }
  Interval a = abs(base);
  return {Real(p), up_pow(a.hi().get(), MPFR_RNDU)};
}

Interval pow(const Interval& base, const Interval& exponent) { return exp(exponent * log(base)); }

Interval abs(const Interval& x) {
  if (x.certainly_nonnegative()) return x;
  if (x.hi().sign() <= 0) return -x;
  Precision p = x.precision();
  Real hi(p);
  Interval n = -x;
  mpfr_max(hi.get(), x.hi().get(), n.hi().get(), MPFR_RNDU);
  return {Real(p), std::move(hi)};
}

Interval min(const Interval& a, const Interval& b) {
  Precision p = joint(a, b);
  Real lo(p), hi(p);
  mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval max(const Interval& a, const Interval& b) {
  Precision p = joint(a, b);
  Real lo(p), hi(p);
  mpfr_max(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval clamp_nonnegative(const Interval& x) { return max(x, Interval(x.precision())); }

Sign certified_sign(const Interval& x) { return certified_sign(x.down(), x.up()); }

Interval round_outward(const Interval& x, Precision p) {
  Real lo(p), hi(p);
  mpfr_set(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_set(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

}  // namespace primecert
