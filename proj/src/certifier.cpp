#include "primecert/certifier.hpp"

#include <cctype>

#include "primecert/errors.hpp"

namespace primecert {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "PASS") return Verdict::PASS;
  if (text == "FAIL") return Verdict::FAIL;
  if (text == "UNKNOWN") return Verdict::UNKNOWN;
  throw DataError("unknown verdict '" + std::string(text) + "'");
}

// ---- x0 literals -----------------------------------------------------------

X0Literal X0Literal::parse(std::string_view text) {
  X0Literal out;
  out.text = std::string(text);
  if (!text.empty() && (text.front() == 'e' || text.front() == 'E')) {
    out.exponent = parse_rational(text.substr(1));
  } else {
    out.value = parse_rational(text);
    if (*out.value <= 0) throw DataError("x0 must be positive: '" + out.text + "'");
  }
  return out;
}

Interval X0Literal::enclose(Precision p) const {
  if (value) return Interval::from(*value, p);
  return exp(Interval::from(*exponent, p));
}

Interval X0Literal::log_enclose(Precision p) const {
  if (exponent) return Interval::from(*exponent, p);
  return log(Interval::from(*value, p));
}

// ---- parameters ------------------------------------------------------------

CertParams derive_params(const CertInputs& in, Precision p) {
  check_precision(p);
  if (in.m < 2) throw ConstraintError(ConstraintCode::M_RANGE, "m = " + std::to_string(in.m) + " must be >= 2");
  if (in.delta <= 0 || in.delta > BigRational(1, 10000)) {
    throw ConstraintError(ConstraintCode::DELTA_RANGE, "delta = " + format_rational(in.delta) + " outside (0, 1e-4]");
  }
  if (in.a < 0 || in.a > BigRational(1, 2)) {
    throw ConstraintError(ConstraintCode::A_RANGE, "a = " + format_rational(in.a) + " outside [0, 1/2]");
  }
  BigRational u = in.delta / in.m;
  Interval u_int = Interval::from(u, p);
  Interval log_x0 = in.x0.log_enclose(p);
  BigRational right = 1 + in.delta * (1 - in.a);
  Interval log_X0 = log_x0 - u_int - log(Interval::from(right, p));
  if (mpfr_cmp_ui(log_X0.lo().get(), 38) < 0) {
    throw ConstraintError(ConstraintCode::X0_FLOOR, "X0 = x0 e^{-u} / (1 + delta (1 - a)) is below e^38");
  }
  // Delta^{-1} = (1 - r) + r (1 - e^{-u}) with r = (1 + delta a) / (1 + delta (1 - a))
  BigRational r = (1 + in.delta * in.a) / right;
  Interval inverse = Interval::from(1 - r, p) - expm1(-u_int) * r;
  Interval Delta = Interval::point(1, p) / inverse;

  return {in, u, in.x0.enclose(p), log_x0, exp(log_X0), log_X0, std::move(Delta)};
}

BigInt floor_Delta(const CertParams& params) {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), params.Delta.lo().get(), MPFR_RNDD);
  return out;
}

Interval compute_omega(const BigRational& u_max, const BigRational& delta_max, const BigRational& log_X_min,
                       Precision p) {
  check_precision(p);
  Interval u = Interval::from(u_max, p);
  Interval one_plus = Interval::from(1 + delta_max, p);
  Interval costa = exp(u / BigRational(2)) * BigRational(1001, 1000) - BigRational(999, 1000);
  Interval cube = exp(-Interval::from(log_X_min, p) / BigRational(6)) *
                  pow(one_plus, Interval::from(BigRational(-1, 6), p)) * expm1(u / BigRational(3));
  return sqrt(one_plus) * (costa + cube);
}

Interval bt_log_ratio(const CertParams& params) {
  Precision p = params.precision();
  Interval u = Interval::from(params.u, p);
  Interval below = params.log_X0 + log(expm1(u));
  if (!below.certainly_positive()) {
    throw ConstraintError(ConstraintCode::LOG_RATIO, "X0 (e^u - 1) must exceed 1");
  }
  Interval above = u + params.log_X0 + log1p(Interval::from(params.delta(), p));
  return above / below;
}

Interval bt_term(const CertParams& params, const WeightProfile& weights) {
  return bt_log_ratio(params) * (2 * weights.nu_a * (1 + params.delta()) / weights.norm1());
}

// ---- certificates ----------------------------------------------------------

Certificate certify_once(const CertInputs& inputs, const WeightCore& core, const ZetaConstants& c) {
  const Precision p = core.precision;
  if (core.m != inputs.m || core.delta != inputs.delta) {
    throw std::invalid_argument("weight core does not match the inputs");
  }
  CertParams params = derive_params(inputs, p);
  if (inputs.T1 <= c.T0 || inputs.T1 > c.H) {
    throw ConstraintError(ConstraintCode::T1_RANGE, "T1 = " + format_rational(inputs.T1) + " outside (T0, H]");
  }
  density_coeffs(inputs.sigma0, c);

  WeightProfile weights = make_weight_profile(core, inputs.a);
  Interval omega = compute_omega(BigRational(1, 10000), BigRational(1, 10000), 38, p);
  SigmaBreakdown breakdown = B_terms(params, core, c);
  Interval bt = bt_term(params, weights);

  Interval u = Interval::from(params.u, p);
  Interval em1 = expm1(u);
  Interval psi_tail = u / (em1 * BigRational(2)) * exp(params.log_X0 * BigRational(-2));
  Interval omega_term = omega / em1 * exp(params.log_X0 / BigRational(-2));
  Interval positive = core.F0.value;
  Interval margin = positive - breakdown.total_with_X0_powers - psi_tail - omega_term - bt;

  Verdict verdict = Verdict::UNKNOWN;
  switch (certified_sign(margin)) {
    case Sign::Positive: verdict = Verdict::PASS; break;
    case Sign::Negative: verdict = Verdict::FAIL; break;
    case Sign::Unknown: break;
  }
  return {std::move(params),
          std::move(omega),
          std::move(breakdown),
          std::move(bt),
          std::move(psi_tail),
          std::move(omega_term),
          std::move(positive),
          std::move(margin),
          weights.nu_a,
          weights.norm1(),
          verdict,
          p,
          0,
          c.id,
          c.q_variant};
}

Certificate certify_once(const CertInputs& inputs, const ZetaConstants& c, Precision p) {
  derive_params(inputs, p);
  return certify_once(inputs, make_weight_core(inputs.m, inputs.delta, p), c);
}

Certificate certify(const CertInputs& inputs, const ZetaConstants& c, Precision p) {
  Certificate cert = certify_once(inputs, c, p);
  for (int retry = 1; retry <= kMaxPrecisionRetries && cert.verdict == Verdict::UNKNOWN; ++retry) {
    p *= 2;
    check_precision(p);
    cert = certify_once(inputs, c, p);
    cert.retries = retry;
  }
  return cert;
}

}  // namespace primecert
