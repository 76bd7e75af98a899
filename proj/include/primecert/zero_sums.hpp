#pragma once

// Upper bounds S1..S5 for sums over zeta zeros, and the comparison constants
// behind the choice of count-based bounds for the low zeros.

#include "primecert/numerics.hpp"
#include "primecert/zeta_data.hpp"

namespace primecert {

// Error term of the partial summation; T/(2 pi) must exceed 1.
Interval q(const Interval& T, const ZetaConstants& c);

// T0 <= T1 <= H throughout.
Interval S1(const BigRational& T1, const ZetaConstants& c, Precision p);
Interval S2(int m, const BigRational& T1, const ZetaConstants& c, Precision p);
Interval S3(int m, const ZetaConstants& c, Precision p);
Interval S4(int m, const BigRational& sigma0, const ZetaConstants& c, Precision p);
// Needs log X0 < R0 m (log H)^2; throws ConstraintError(S5_PRECONDITION).
Interval S5(const Interval& X0, int m, const BigRational& sigma0, const ZetaConstants& c);

struct SBounds {
  Interval S1;
  Interval S2;
  Interval S3;
  Interval S4;
  Interval S5;
  QVariant q_variant;
};

SBounds s_bounds(int m, const BigRational& T1, const Interval& X0, const BigRational& sigma0, const ZetaConstants& c,
                 Precision p);

struct C0Analysis {
  Interval w1, w2, w3;
  Interval v1, v2, v3, v4, v5;
  Interval c0;
  // Bracketed factors of the three pairwise comparisons at m0, delta0, t1.
  Interval reciprocal_vs_count_all;   // about 2.48
  Interval reciprocal_vs_count_low;   // about 1574
  Interval reciprocal_vs_count_high;  // about 1.374
};

// m0 = 5, delta0 = 2e-8, t1 = 1e9 unless given.
C0Analysis c0_analysis(const ZetaConstants& c, Precision p = kDefaultPrecision, int m0 = 5,
                       const BigRational& delta0 = BigRational(1, 50000000),
                       const BigRational& t1 = BigRational(1000000000));

}  // namespace primecert
