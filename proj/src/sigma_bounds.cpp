#include "primecert/sigma_bounds.hpp"

#include "primecert/zero_sums.hpp"

namespace primecert {

namespace {

struct Prefactors {
  Interval u;
  Interval half_plus;   // e^{u/2} + 1
  Interval half_minus;  // e^{u/2} - 1
  Interval full_minus;  // e^u - 1
  Interval full_plus;   // e^u + 1
  Interval delta_m;     // delta^m
};

Prefactors prefactors(const WeightCore& w) {
  Precision p = w.precision;
  Interval u = Interval::from(w.delta / w.m, p);
  Interval half_minus = expm1(u / BigRational(2));
  Interval full_minus = expm1(u);
  return {u,
          half_minus + BigRational(2),
          half_minus,
          full_minus,
          full_minus + BigRational(2),
          Interval::from(pow(w.delta, static_cast<unsigned long>(w.m)), p)};
}

}  // namespace

Sigma0Bounds sigma0_bounds(const WeightCore& w, const ZetaConstants& c) {
  Precision p = w.precision;
  Prefactors k = prefactors(w);
  Interval four = Interval::point(4, p);
  return {four * w.F1.value / (k.half_plus * w.delta) * c.S0,
          four * w.F0.value / k.half_plus * Interval::from(c.N0, p)};
}

Sigma1Bounds sigma1_bounds(const WeightCore& w, const BigRational& T1, const ZetaConstants& c) {
  Precision p = w.precision;
  Prefactors k = prefactors(w);
  Interval four = Interval::point(4, p);
  BigInt above = N_bounds(T1, c, p).second - c.N0;
  if (above < 0) above = 0;
  return {four * w.F1.value / (k.half_plus * w.delta) * S1(T1, c, p),
          four * w.F0.value / k.half_plus * Interval::from(above, p)};
}

Interval B3(const WeightCore& w, const Interval& sigma, const ZetaConstants& c) {
  Prefactors k = prefactors(w);
  Interval shape = (exp(k.u * sigma) + BigRational(1)) / k.full_minus;
  return w.Fmm.value * BigRational(2) / k.delta_m * shape * S3(w.m, c, w.precision);
}

SigmaBreakdown B_terms(const CertParams& params, const WeightCore& w, const ZetaConstants& c) {
  Precision p = w.precision;
  Prefactors k = prefactors(w);
  const int m = w.m;
  const Interval& X0 = params.X0;

  Sigma0Bounds low = sigma0_bounds(w, c);
  Sigma1Bounds mid = sigma1_bounds(w, params.T1(), c);

  Interval fmm_scaled = w.Fmm.value / k.delta_m;
  Interval B2 = fmm_scaled * BigRational(2) / k.half_minus * S2(m, params.T1(), c, p);
  Interval sigma0 = Interval::from(params.sigma0(), p);
  Interval B3_sigma0 = B3(w, sigma0, c);
  Interval B3_other = B3(w, BigRational(1) - sigma0, c);
  Interval edge = fmm_scaled * k.full_plus * BigRational(2) / k.full_minus;
  Interval B41 = edge * S5(X0, m, params.sigma0(), c);
  Interval B42 = edge * S4(m, params.sigma0(), c, p);

  Interval B0 = min(low.Sigma01, low.Sigma02);
  Interval B1 = min(mid.Sigma11, mid.Sigma12);

  Interval log_X0 = params.log_X0;
  Interval eps = Interval::point(1, p) / (Interval::from(c.R0, p) * log(Interval::from(c.H, p)));
  auto X0_pow = [&](const Interval& exponent) { return exp(exponent * log_X0); };
  Interval minus_half = Interval::from(BigRational(-1, 2), p);

  Interval total = (B0 + B1 + B2) * X0_pow(minus_half) + B3_sigma0 * X0_pow(sigma0 - BigRational(1)) +
                   B3_other * X0_pow(-sigma0) + B41 * X0_pow(-eps) + B42 * X0_pow(eps - BigRational(1));

  return {low.Sigma01,
          low.Sigma02,
          mid.Sigma11,
          mid.Sigma12,
          std::move(B0),
          std::move(B1),
          std::move(B2),
          std::move(B3_sigma0),
          std::move(B3_other),
          std::move(B41),
          std::move(B42),
          std::move(total),
          mpfr_lessequal_p(low.Sigma02.hi().get(), low.Sigma01.hi().get()) != 0,
          mpfr_lessequal_p(mid.Sigma12.hi().get(), mid.Sigma11.hi().get()) != 0};
}

}  // namespace primecert
