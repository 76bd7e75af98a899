#include "primecert/weight.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "primecert/errors.hpp"

namespace primecert {

// ---- RationalPolynomial ----------------------------------------------------

RationalPolynomial::RationalPolynomial(std::vector<BigRational> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

void RationalPolynomial::trim() {
  while (coefficients_.size() > 1 && coefficients_.back() == 0) coefficients_.pop_back();
  if (coefficients_.empty()) coefficients_.emplace_back(0);
}

RationalPolynomial RationalPolynomial::monomial(const BigRational& coefficient, std::size_t degree) {
  std::vector<BigRational> c(degree + 1, BigRational(0));
  c[degree] = coefficient;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::linear_power(const BigRational& delta, unsigned power) {
  std::vector<BigRational> c(power + 1);
  BigRational delta_pow = 1;
  for (unsigned j = 0; j <= power; ++j) {
    c[j] = BigRational(binomial(power, j)) * delta_pow;
    delta_pow *= delta;
  }
  return RationalPolynomial(std::move(c));
}

BigRational RationalPolynomial::operator()(const BigRational& t) const {
  BigRational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Interval RationalPolynomial::evaluate(const Interval& t) const {
  Precision p = t.precision();
  Interval acc(p);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * t + Interval::from(*it, p);
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coefficients_.size() <= 1) return RationalPolynomial({BigRational(0)});
  std::vector<BigRational> c(coefficients_.size() - 1);
  for (std::size_t i = 1; i < coefficients_.size(); ++i) c[i - 1] = coefficients_[i] * static_cast<long>(i);
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::antiderivative() const {
  std::vector<BigRational> c(coefficients_.size() + 1, BigRational(0));
  for (std::size_t i = 0; i < coefficients_.size(); ++i) c[i + 1] = coefficients_[i] / static_cast<long>(i + 1);
  return RationalPolynomial(std::move(c));
}

BigRational RationalPolynomial::integrate(const BigRational& a, const BigRational& b) const {
  RationalPolynomial anti = antiderivative();
  return anti(b) - anti(a);
}

BigRational RationalPolynomial::coefficient_norm() const {
  BigRational sum = 0;
  for (const auto& c : coefficients_) sum += abs(c);
  return sum;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<BigRational> c(a.coefficients_.size() + b.coefficients_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    if (a.coefficients_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) c[i + j] += a.coefficients_[i] * b.coefficients_[j];
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<BigRational> c(std::max(a.coefficients_.size(), b.coefficients_.size()), BigRational(0));
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) c[i] += a.coefficients_[i];
  for (std::size_t i = 0; i < b.coefficients_.size(); ++i) c[i] += b.coefficients_[i];
  return RationalPolynomial(std::move(c));
}

// ---- weight ----------------------------------------------------------------

RationalPolynomial weight_polynomial(int m) {
  // (4t - 4t^2)^m = sum_k C(m,k) 4^m (-1)^k t^{m+k}
  std::vector<BigRational> c(2 * m + 1, BigRational(0));
  BigInt four_m;
  mpz_ui_pow_ui(four_m.get_mpz_t(), 4, static_cast<unsigned long>(m));
  for (int k = 0; k <= m; ++k) {
    BigInt term = binomial(m, k) * four_m;
    c[m + k] = BigRational(k % 2 == 0 ? term : BigInt(-term));
  }
  return RationalPolynomial(std::move(c));
}

BigRational norm1(int m) {
  if (m < 1) throw ConstraintError(ConstraintCode::M_RANGE, "norm1 needs m >= 1");
  BigInt f = factorial(m);
  BigInt num = f * f;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 2 * static_cast<unsigned long>(m));
  BigRational out(num, factorial(2 * m + 1));
  out.canonicalize();
  return out;
}

BigRational norm2_mth_derivative(int m) {
  if (m < 1) throw ConstraintError(ConstraintCode::M_RANGE, "norm2 needs m >= 1");
  BigInt root = factorial(m);
  mpz_mul_2exp(root.get_mpz_t(), root.get_mpz_t(), 2 * static_cast<unsigned long>(m));
  BigRational out(root * root, BigInt(2 * m + 1));
  out.canonicalize();
  return out;
}

BigRational nu(int m, const BigRational& a) {
  if (a < 0 || a > BigRational(1, 2)) throw ConstraintError(ConstraintCode::A_RANGE, "a must lie in [0, 1/2]");
  // f_m is symmetric about 1/2, so both edge pieces carry the same mass.
  return 2 * weight_polynomial(m).integrate(0, a);
}

LambdaBounds lambda_bounds(int m, const BigRational& delta, Precision p) {
  if (m < 2) throw ConstraintError(ConstraintCode::M_RANGE, "lambda bounds need m >= 2");
  if (delta <= 0) throw ConstraintError(ConstraintCode::DELTA_RANGE, "lambda bounds need delta > 0");
  BigInt fm = factorial(m);
  BigInt f2m1 = factorial(2 * m + 1);
  BigInt den = fm * fm;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * static_cast<unsigned long>(m) - 1);
  BigRational lambda0(f2m1, den);
  lambda0.canonicalize();
  BigRational one_plus = 1 + delta;
  BigRational lambda1 = one_plus * one_plus * lambda0;

  BigRational inner = (pow(one_plus, 2 * m + 3) - 1) / (delta * (2 * m + 3));
  BigRational ratio(f2m1, fm);
  ratio.canonicalize();
  Interval lambda = sqrt(Interval::from(inner, p)) * ratio / sqrt(Interval::point(2 * m + 1, p));
  return {lambda0, lambda1, lambda};
}

// ---- shifted Legendre ------------------------------------------------------

namespace {

struct Dyadic {
  BigInt numerator;
  unsigned long exponent;  // value = numerator / 2^exponent
};

Dyadic as_dyadic(const BigRational& t) {
  const BigInt& den = t.get_den();
  unsigned long e = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
  if (mpz_scan1(den.get_mpz_t(), 0) != e) throw std::logic_error("breakpoint is not dyadic");
  return {t.get_num(), e};
}

// sum_i c_i n^i 2^{k(d-i)}, i.e. 2^{kd} times the polynomial at n / 2^k.
BigInt scaled_horner(const std::vector<BigInt>& c, const BigInt& n, unsigned long k) {
  std::size_t d = c.size() - 1;
  BigInt acc = c[d];
  BigInt term;
  for (std::size_t i = d; i-- > 0;) {
    acc *= n;
    mpz_mul_2exp(term.get_mpz_t(), c[i].get_mpz_t(), k * (d - i));
    acc += term;
  }
  return acc;
}

int exact_sign(const std::vector<BigInt>& c, const BigRational& t) {
  Dyadic x = as_dyadic(t);
  return sgn(scaled_horner(c, x.numerator, x.exponent));
}

BigRational dyadic(const BigInt& numerator, long bits) {
  BigRational out(numerator);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  return out;
}

// Newton refinement of the j-th root (1-based, descending in x) of P_m(x).
void legendre_root(int m, int j, Real& x, Precision work) {
  Real p0(work), p1(work), p2(work), dp(work), tmp(work), step(work);
  double guess = std::cos(M_PI * (j - 0.25) / (m + 0.5));
  mpfr_set_d(x.get(), guess, MPFR_RNDN);
  for (int iter = 0; iter < 200; ++iter) {
    mpfr_set_ui(p0.get(), 1, MPFR_RNDN);
    mpfr_set(p1.get(), x.get(), MPFR_RNDN);
    for (int n = 2; n <= m; ++n) {
      // p2 = ((2n-1) x p1 - (n-1) p0) / n
      mpfr_mul(tmp.get(), x.get(), p1.get(), MPFR_RNDN);
      mpfr_mul_ui(tmp.get(), tmp.get(), 2 * n - 1, MPFR_RNDN);
      mpfr_mul_ui(p2.get(), p0.get(), n - 1, MPFR_RNDN);
      mpfr_sub(p2.get(), tmp.get(), p2.get(), MPFR_RNDN);
      mpfr_div_ui(p2.get(), p2.get(), n, MPFR_RNDN);
      mpfr_swap(p0.get(), p1.get());
      mpfr_swap(p1.get(), p2.get());
    }
    // P_m'(x) = m (x P_m - P_{m-1}) / (x^2 - 1)
    mpfr_mul(dp.get(), x.get(), p1.get(), MPFR_RNDN);
    mpfr_sub(dp.get(), dp.get(), p0.get(), MPFR_RNDN);
    mpfr_mul_ui(dp.get(), dp.get(), m, MPFR_RNDN);
    mpfr_sqr(tmp.get(), x.get(), MPFR_RNDN);
    mpfr_sub_ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
    mpfr_div(dp.get(), dp.get(), tmp.get(), MPFR_RNDN);
    mpfr_div(step.get(), p1.get(), dp.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < -static_cast<mpfr_exp_t>(work) + 8) break;
  }
}

}  // namespace

ShiftedLegendre::ShiftedLegendre(int m, long bracket_bits) : m_(m), bracket_bits_(bracket_bits) {
  if (m < 1) throw ConstraintError(ConstraintCode::M_RANGE, "shifted Legendre needs m >= 1");
  // P_m(1-2t) = sum_k C(m,k) C(m+k,k) (-t)^k
  std::vector<BigInt> ints(m + 1);
  std::vector<BigRational> coeffs(m + 1);
  for (int k = 0; k <= m; ++k) {
    BigInt c = binomial(m, k) * binomial(m + k, k);
    ints[k] = (k % 2 == 0) ? c : BigInt(-c);
    coeffs[k] = BigRational(ints[k]);
  }
  poly_ = RationalPolynomial(std::move(coeffs));

  const long k = bracket_bits;
  Precision work = static_cast<Precision>(k + 64);
  Real x(work), t(work);
  BigInt center;
  for (int j = 1; j <= m; ++j) {
    legendre_root(m, j, x, work);
    // t = (1 - x) / 2, scaled by 2^k
    mpfr_ui_sub(t.get(), 1, x.get(), MPFR_RNDN);
    mpfr_mul_2si(t.get(), t.get(), k - 1, MPFR_RNDN);
    mpfr_get_z(center.get_mpz_t(), t.get(), MPFR_RNDD);

    bool isolated = false;
    for (unsigned long widen = 1; widen <= (1ul << 12) && !isolated; widen <<= 2) {
      BigRational lo = dyadic(center - widen, k);
      BigRational hi = dyadic(center + 1 + widen, k);
      if (exact_sign(ints, lo) * exact_sign(ints, hi) < 0) {
        roots_.push_back({lo, hi});
        isolated = true;
      }
    }
    if (!isolated) throw RootIsolationError(m);
  }

  // m disjoint brackets, each with a sign change, account for all m roots of
  // a degree-m polynomial; check they are ordered, disjoint and inside (0,1),
  // and that the sign alternates on the pieces between them.
  if (exact_sign(ints, 0) != 1) throw RootIsolationError(m);
  BigRational previous = 0;
  for (int j = 0; j <= m; ++j) {
    BigRational next = (j < m) ? roots_[j].lo : BigRational(1);
    if (next <= previous) throw RootIsolationError(m);
    BigRational mid = (previous + next) / 2;
    if (exact_sign(ints, mid) != piece_sign(j) || exact_sign(ints, next) * piece_sign(j) < 0) {
      throw RootIsolationError(m);
    }
    if (j < m) previous = roots_[j].hi;
  }
}

long legendre_bracket_bits(int m, Precision p) {
  long bits = 0;
  while ((1L << bits) < 2L * m) ++bits;
  return static_cast<long>(p) + bits + 32;
}

std::shared_ptr<const ShiftedLegendre> shifted_legendre(int m, Precision p) {
  static std::mutex mutex;
  static std::map<std::pair<int, Precision>, std::shared_ptr<const ShiftedLegendre>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({m, p}); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const ShiftedLegendre>(m, legendre_bracket_bits(m, p));
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(m, p), std::move(built)).first->second;
}

Interval legendre_Fmm(int m, const BigRational& delta, Precision p) {
  check_precision(p);
  if (delta < 0) throw ConstraintError(ConstraintCode::DELTA_RANGE, "delta must be nonnegative");
  auto legendre = shifted_legendre(m, p);
  const unsigned long k = static_cast<unsigned long>(legendre->bracket_bits());

  // With delta = n/d, d^{m+1} (1 + delta t)^{m+1} has integer coefficients.
  const BigInt& n = delta.get_num();
  const BigInt& d = delta.get_den();
  std::vector<BigInt> d_pow(m + 2), n_pow(m + 2);
  d_pow[0] = 1;
  n_pow[0] = 1;
  for (int j = 1; j <= m + 1; ++j) {
    d_pow[j] = d_pow[j - 1] * d;
    n_pow[j] = n_pow[j - 1] * n;
  }
  std::vector<BigInt> linear(m + 2);
  for (int j = 0; j <= m + 1; ++j) linear[j] = binomial(m + 1, j) * n_pow[j] * d_pow[m + 1 - j];

  const auto& legendre_coeffs = legendre->polynomial().coefficients();
  std::vector<BigInt> integrand(2 * m + 2, BigInt(0));
  for (int i = 0; i <= m; ++i) {
    const BigInt& c = legendre_coeffs[i].get_num();
    for (int j = 0; j <= m + 1; ++j) integrand[i + j] += c * linear[j];
  }

  // L times the antiderivative, with L = lcm(1, ..., 2m+2).
  const int top = 2 * m + 2;
  BigInt L = 1;
  for (int i = 2; i <= top; ++i) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(i));
  std::vector<BigInt> anti(top + 1, BigInt(0));
  BigInt anti_norm = 0;
  for (int i = 0; i < top; ++i) {
    anti[i + 1] = integrand[i] * (L / (i + 1));
    anti_norm += abs(anti[i + 1]);
  }
  BigInt denominator = L * d_pow[m + 1];

  // The coefficients cancel down to values of order one; carry enough bits
  // for that and for the dyadic breakpoints to be exact.
  long excess = std::max<long>(0, static_cast<long>(mpz_sizeinbase(anti_norm.get_mpz_t(), 2)) -
                                      static_cast<long>(mpz_sizeinbase(denominator.get_mpz_t(), 2)));
  Precision pe = std::max<Precision>(p + excess + 64, static_cast<Precision>(k) + 8);
  std::vector<Real> lo_coeff, hi_coeff;
  lo_coeff.reserve(anti.size());
  hi_coeff.reserve(anti.size());
  for (const auto& c : anti) {
    lo_coeff.emplace_back(pe);
    hi_coeff.emplace_back(pe);
    mpfr_set_z(lo_coeff.back().get(), c.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_coeff.back().get(), c.get_mpz_t(), MPFR_RNDU);
  }
  // t >= 0 is exact at precision pe, so Horner is monotone in each end.
  Real t(pe), lo(pe), hi(pe);
  auto antiderivative_at = [&](const BigRational& point) {
    mpfr_set_q(t.get(), point.get_mpq_t(), MPFR_RNDN);
    mpfr_set(lo.get(), lo_coeff.back().get(), MPFR_RNDD);
    mpfr_set(hi.get(), hi_coeff.back().get(), MPFR_RNDU);
    for (std::size_t i = anti.size() - 1; i-- > 0;) {
      mpfr_fma(lo.get(), lo.get(), t.get(), lo_coeff[i].get(), MPFR_RNDD);
      mpfr_fma(hi.get(), hi.get(), t.get(), hi_coeff[i].get(), MPFR_RNDU);
    }
    return Interval(lo, hi);
  };

  // Each root is replaced by its bracket's lower end. There the integrand
  // is at most (1+delta)^{m+1} in size since |P_m| <= 1 on [-1, 1], and each
  // interior breakpoint enters two pieces.
  Interval total(pe);
  Interval previous(pe);
  BigRational slack = 0;
  for (int j = 0; j <= m; ++j) {
    Interval at(pe);
    if (j < m) {
      const RootBracket& bracket = legendre->roots()[j];
      at = antiderivative_at(bracket.lo);
      slack += 2 * (bracket.hi - bracket.lo);
    } else {
      at = antiderivative_at(1);
    }
    Interval piece = at - previous;
    if (legendre->piece_sign(j) < 0) total -= piece;
    else total += piece;
    previous = std::move(at);
  }
  Interval radius = Interval::from(slack * pow(1 + delta, static_cast<unsigned long>(m + 1)), pe);
  Interval value = clamp_nonnegative(total / Interval::from(denominator, pe) + Interval::hull(-radius, radius));

  // f_m^{(m)}(t) = 4^m m! P_m(1-2t)
  BigInt scale = factorial(m);
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * static_cast<unsigned long>(m));
  return round_outward(value * (BigRational(scale) / norm1(m)), p);
}

DirectedValue legendre_Fmm_upper(int m, const BigRational& delta, Precision p) {
  return legendre_Fmm(m, delta, p).up();
}

FEnclosure F(int k, int m, const BigRational& delta, Precision p) {
  if (m < 2) throw ConstraintError(ConstraintCode::M_RANGE, "F needs m >= 2");
  if (delta <= 0 || delta > BigRational(1, 10000)) {
    throw ConstraintError(ConstraintCode::DELTA_RANGE, "F needs 0 < delta <= 1e-4");
  }
  const BigRational n1 = norm1(m);
  if (k == 0) {
    BigRational exact = (weight_polynomial(m) * RationalPolynomial::linear_power(delta, 1)).integrate(0, 1) / n1;
    Interval bound = Interval::hull(Interval::point(1, p), Interval::from(1 + delta, p));
    return {exact, Interval::from(exact, p), bound};
  }
  if (k == 1) {
    // f_m' has the sign of 1 - 2t.
    RationalPolynomial g = weight_polynomial(m).derivative() * RationalPolynomial::linear_power(delta, 2);
    const BigRational half(1, 2);
    BigRational exact = (g.integrate(0, half) - g.integrate(half, 1)) / n1;
    LambdaBounds lb = lambda_bounds(m, delta, p);
    return {exact, Interval::from(exact, p),
            Interval::hull(Interval::from(lb.lambda0, p), Interval::from(lb.lambda1, p))};
  }
  if (k == m) {
    LambdaBounds lb = lambda_bounds(m, delta, p);
    Interval piecewise = legendre_Fmm(m, delta, p);
    Interval value(piecewise.lo(), min(piecewise, lb.lambda).hi());
    return {std::nullopt, std::move(value), Interval::hull(Interval(p), lb.lambda)};
  }
  throw std::invalid_argument("F_{k,m,delta} is only defined here for k in {0, 1, m}");
}

WeightCore make_weight_core(int m, const BigRational& delta, Precision p) {
  check_precision(p);
  return {m, delta, p, norm1(m), F(0, m, delta, p), F(1, m, delta, p), F(m, m, delta, p)};
}

WeightProfile make_weight_profile(WeightCore core, const BigRational& a) {
  BigRational edge = nu(core.m, a);
  BigRational mid = core.norm1 - edge;
  return {std::move(core), a, edge, mid};
}

WeightProfile make_weight_profile(int m, const BigRational& delta, const BigRational& a, Precision p) {
  return make_weight_profile(make_weight_core(m, delta, p), a);
}

}  // namespace primecert
