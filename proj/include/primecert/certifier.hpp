#pragma once

// Validation of the parameter system, the constants Delta and omega, and the
// signed margin of the main inequality.

#include <string>

#include "primecert/params.hpp"
#include "primecert/sigma_bounds.hpp"
#include "primecert/weight.hpp"
#include "primecert/zeta_data.hpp"

namespace primecert {

enum class Verdict { PASS, FAIL, UNKNOWN };
std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

inline constexpr int kMaxPrecisionRetries = 3;

// Checks m, delta, a and the X0 floor; throws ConstraintError.
CertParams derive_params(const CertInputs& inputs, Precision p = kDefaultPrecision);

// Delta as an integer, rounded down.
BigInt floor_Delta(const CertParams& params);

// Supremum over u <= u_max, delta <= delta_max, X >= e^{log_X_min} of
// sqrt(1+delta) (1.001 e^{u/2} - 0.999 + X^{-1/6} (1+delta)^{-1/6} (e^{u/3} - 1)).
Interval compute_omega(const BigRational& u_max = BigRational(1, 10000),
                       const BigRational& delta_max = BigRational(1, 10000), const BigRational& log_X_min = 38,
                       Precision p = kDefaultPrecision);

// log(e^u X0 (1 + delta)) / log(X0 (e^u - 1)); throws ConstraintError(LOG_RATIO)
// when X0 (e^u - 1) <= 1.
Interval bt_log_ratio(const CertParams& params);

// 2 nu(f, a) (1 + delta) / ||f||_1 * log(e^u X0 (1 + delta)) / log(X0 (e^u - 1))
Interval bt_term(const CertParams& params, const WeightProfile& weights);

struct Certificate {
  CertParams params;
  Interval omega;
  SigmaBreakdown breakdown;
  Interval bt_term;
  Interval psi_tail_term;  // u / (2 (e^u - 1)) X0^{-2}
  Interval omega_term;     // omega / (e^u - 1) X0^{-1/2}
  Interval positive_term;  // F_{0,m,delta}
  Interval margin;         // positive_term minus every other term
  BigRational nu_a;
  BigRational norm1;
  Verdict verdict;
  Precision precision_used;
  int retries;
  std::string constants_id;
  QVariant q_variant;
};

// One evaluation at precision p, no retries.
Certificate certify_once(const CertInputs& inputs, const ZetaConstants& c, Precision p);
// Reuses a weight core built for (inputs.m, inputs.delta) at precision p.
Certificate certify_once(const CertInputs& inputs, const WeightCore& core, const ZetaConstants& c);

// Doubles the precision up to kMaxPrecisionRetries times while the verdict
// is UNKNOWN.
Certificate certify(const CertInputs& inputs, const ZetaConstants& c, Precision p = kDefaultPrecision);

}  // namespace primecert
