#include "primecert/zero_sums.hpp"

#include "primecert/errors.hpp"
#include "primecert/weight.hpp"

namespace primecert {

namespace {

void check_height(const BigRational& T1, const ZetaConstants& c) {
  if (T1 < c.T0 || T1 > c.H) {
    throw ConstraintError(ConstraintCode::T1_RANGE, "T1 = " + format_rational(T1) + " outside [T0, H]");
  }
}

void check_m(int m) {
  if (m < 2) throw ConstraintError(ConstraintCode::M_RANGE, "m must be >= 2");
}

Interval two_pi(Precision p) { return Interval::pi(p) * BigRational(2); }

// 1/(2 pi) + q(T)
Interval density_factor(const Interval& T, const ZetaConstants& c) {
  return Interval::point(1, T.precision()) / two_pi(T.precision()) + q(T, c);
}

// (1 + m log(T/2 pi)) / (m^2 T^m)
Interval tail_main(int m, const Interval& T) {
  Interval top = log(T / two_pi(T.precision())) * BigRational(m) + BigRational(1);
  return top / (pow(T, m) * BigRational(m * m));
}

}  // namespace

Interval q(const Interval& T, const ZetaConstants& c) {
  Precision p = T.precision();
  Interval log_ratio = log(T / two_pi(p));
  if (!log_ratio.certainly_positive()) throw ConstraintError(ConstraintCode::DOMAIN, "q(T) needs T > 2 pi");
  Interval r = R(T, c);
  if (c.q_variant == QVariant::TwoROverT) return r * BigRational(2) / T;
  return r / (T * log_ratio);
}

Interval S1(const BigRational& T1, const ZetaConstants& c, Precision p) {
  check_height(T1, c);
  Interval t0 = Interval::from(c.T0, p);
  Interval t1 = Interval::from(T1, p);
  Interval spread = log(t1 / t0) * log(sqrt(t1 * t0) / two_pi(p));
  return density_factor(t0, c) * clamp_nonnegative(spread) + R(t0, c) * BigRational(2) / t0;
}

Interval S2(int m, const BigRational& T1, const ZetaConstants& c, Precision p) {
  check_m(m);
  check_height(T1, c);
  Interval t1 = Interval::from(T1, p);
  Interval h = Interval::from(c.H, p);
  Interval bracket = clamp_nonnegative(tail_main(m, t1) - tail_main(m, h));
  return density_factor(t1, c) * bracket + R(t1, c) * BigRational(2) / pow(t1, m + 1);
}

Interval S3(int m, const ZetaConstants& c, Precision p) {
  check_m(m);
  Interval h = Interval::from(c.H, p);
  return density_factor(h, c) * tail_main(m, h) + R(h, c) * BigRational(2) / pow(h, m + 1);
}

Interval S4(int m, const BigRational& sigma0, const ZetaConstants& c, Precision p) {
  check_m(m);
  const DensityRow& row = density_coeffs(sigma0, c);
  Interval h = Interval::from(c.H, p);
  Interval body = Interval::from(row.c1 * (1 + BigRational(1, m)), p) + log(h) * row.c2 / h +
                  Interval::from(row.c3 + row.c2 / (m + 1), p) / h;
  return body / pow(h, m);
}

Interval S5(const Interval& X0, int m, const BigRational& sigma0, const ZetaConstants& c) {
  check_m(m);
  const DensityRow& row = density_coeffs(sigma0, c);
  Precision p = X0.precision();
  Interval h = Interval::from(c.H, p);
  Interval log_h = log(h);
  Interval log_x = log(X0);
  Interval r0 = Interval::from(c.R0, p);
  Interval denominator = r0 * BigRational(m) / log_x * square(log_h) - BigRational(1);
  if (!denominator.certainly_positive()) {
    throw ConstraintError(ConstraintCode::S5_PRECONDITION, "need log X0 < R0 m (log H)^2");
  }
  Interval edge = (Interval::from(row.c1, p) + Interval::from(row.c2, p) / h) * r0 / (log_x * BigRational(2)) *
                  square(log_h) / denominator;
  Interval body = Interval::from(row.c1, p) + log_h * row.c2 / h + Interval::from(row.c3, p) / h + edge;
  return body / pow(h, m);
}

SBounds s_bounds(int m, const BigRational& T1, const Interval& X0, const BigRational& sigma0, const ZetaConstants& c,
                 Precision p) {
  return {S1(T1, c, p), S2(m, T1, c, p), S3(m, c, p), S4(m, sigma0, c, p), S5(X0, m, sigma0, c), c.q_variant};
}

C0Analysis c0_analysis(const ZetaConstants& c, Precision p, int m0, const BigRational& delta0, const BigRational& t1) {
  check_precision(p);
  Interval t0 = Interval::from(c.T0, p);
  Interval k = density_factor(t0, c);
  Interval log_2pi = log(two_pi(p));
  Interval log_t0 = log(t0);
  Interval one = Interval::point(1, p);

  C0Analysis out{
      .w1 = k / BigRational(2),
      .w2 = -log_2pi * k,
      .w3 = k * (log_t0 * log_2pi - square(log_t0) / BigRational(2)) + R(t0, c) * BigRational(2) / t0,
      .v1 = one / two_pi(p),
      .v2 = -log_2pi / two_pi(p) - BigRational(1),
      .v3 = Interval::from(c.rosser[0], p),
      .v4 = Interval::from(c.rosser[1], p),
      .v5 = Interval::from(c.rosser[2] + BigRational(7, 8), p),
      .c0 = Interval(p),
      .reciprocal_vs_count_all = Interval(p),
      .reciprocal_vs_count_low = Interval(p),
      .reciprocal_vs_count_high = Interval(p),
  };

  Interval t = Interval::from(t1, p);
  Interval L = log(t);
  out.c0 = (out.w1 + out.w2 / L + out.w3 / square(L)) /
           (out.v1 + out.v3 / t + out.v4 * log(L) / (t * L) + out.v5 / (t * L));

  BigRational lambda0 = lambda_bounds(m0, delta0, p).lambda0;
  BigRational lead = lambda0 / (delta0 * (1 + delta0));
  Interval s0 = Interval::from(c.S0, p);
  Interval counted = P(t) + R(t, c);
  Interval s1 = S1(t1, c, p);
  out.reciprocal_vs_count_all = (s0 / counted + out.c0 * L / t) * lead;
  out.reciprocal_vs_count_low = s0 * lead / Interval::from(c.N0, p);
  out.reciprocal_vs_count_high = s1 / (s1 * t / (out.c0 * L) - Interval::from(c.N0, p)) * lead;
  return out;
}

}  // namespace primecert
