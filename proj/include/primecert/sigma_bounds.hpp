#pragma once

// Certified upper bound for the sum over zeta zeros, assembled from the
// B-terms. Each term is an Interval whose upper end is the bound used.

#include "primecert/params.hpp"
#include "primecert/weight.hpp"
#include "primecert/zeta_data.hpp"

namespace primecert {

struct Sigma0Bounds {
  Interval Sigma01;  // reciprocal-sum form, from S0
  Interval Sigma02;  // count form, from N0
};

struct Sigma1Bounds {
  Interval Sigma11;  // from S1(T1)
  Interval Sigma12;  // from N(T1) - N0
};

Sigma0Bounds sigma0_bounds(const WeightCore& w, const ZetaConstants& c);
Sigma1Bounds sigma1_bounds(const WeightCore& w, const BigRational& T1, const ZetaConstants& c);

// The count forms are preferred when their upper bound is not larger.
struct SigmaBreakdown {
  Interval Sigma01, Sigma02, Sigma11, Sigma12;
  Interval B0, B1, B2;
  Interval B3_at_sigma0, B3_at_one_minus_sigma0;
  Interval B41, B42;
  Interval total_with_X0_powers;
  bool B0_uses_count;
  bool B1_uses_count;
};

// B3(m, delta, sigma)
Interval B3(const WeightCore& w, const Interval& sigma, const ZetaConstants& c);

SigmaBreakdown B_terms(const CertParams& params, const WeightCore& w, const ZetaConstants& c);

}  // namespace primecert
