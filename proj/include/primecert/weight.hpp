#pragma once

// The m-admissible weight f_m(t) = (4t(1-t))^m and everything derived from it:
// L1 norm, edge mass nu(f_m, a), the F_{k,m,delta} integrals for k in {0, 1, m}
// and their a-priori lambda bounds.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "primecert/numerics.hpp"

namespace primecert {

// Dense polynomial with exact rational coefficients, lowest degree first.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<BigRational> coefficients);

  static RationalPolynomial monomial(const BigRational& coefficient, std::size_t degree);
  // (1 + delta t)^power
  static RationalPolynomial linear_power(const BigRational& delta, unsigned power);

  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<BigRational>& coefficients() const noexcept { return coefficients_; }
  const BigRational& operator[](std::size_t i) const { return coefficients_.at(i); }

  BigRational operator()(const BigRational& t) const;
  Interval evaluate(const Interval& t) const;
  RationalPolynomial derivative() const;
  // Antiderivative vanishing at 0.
  RationalPolynomial antiderivative() const;
  BigRational integrate(const BigRational& a, const BigRational& b) const;
  // Sum of |coefficients|: bounds |p(t)| for t in [-1, 1].
  BigRational coefficient_norm() const;

  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

 private:
  void trim();
  std::vector<BigRational> coefficients_;
};

// f_m(t) = (4t(1-t))^m
RationalPolynomial weight_polynomial(int m);

BigRational norm1(int m);                 // ||f_m||_1 = 2^{2m} (m!)^2 / (2m+1)!
BigRational norm2_mth_derivative(int m);  // ||f_m^{(m)}||_2^2 = (2^{2m} m!)^2 / (2m+1)
BigRational nu(int m, const BigRational& a);  // int_0^a f_m + int_{1-a}^1 f_m

struct LambdaBounds {
  BigRational lambda0;  // (2m+1)! / (2^{2m-1} (m!)^2)
  BigRational lambda1;  // (1+delta)^2 lambda0
  Interval lambda;      // Cauchy-Schwarz ceiling for F_{m,m,delta}
};
LambdaBounds lambda_bounds(int m, const BigRational& delta, Precision p);

// A dyadic bracket [lo, hi] certified to contain exactly one simple root.
struct RootBracket {
  BigRational lo;
  BigRational hi;
};

// P_m(1 - 2t) with its m interior roots isolated in disjoint dyadic brackets.
// Together with the endpoints 0 and 1 they give m+2 breakpoints and m+1
// pieces on which the polynomial has constant sign.
class ShiftedLegendre {
 public:
  // Isolates the roots with bracket width at most 2^-(bracket_bits - 2).
  ShiftedLegendre(int m, long bracket_bits);

  int degree() const noexcept { return m_; }
  long bracket_bits() const noexcept { return bracket_bits_; }
  const RationalPolynomial& polynomial() const noexcept { return poly_; }
  const std::vector<RootBracket>& roots() const noexcept { return roots_; }
  // Sign of P_m(1-2t) on piece j (between breakpoint j and j+1), j = 0..m.
  int piece_sign(int j) const { return (j % 2 == 0) ? 1 : -1; }

 private:
  int m_;
  long bracket_bits_;
  RationalPolynomial poly_;
  std::vector<RootBracket> roots_;
};

// Bracket precision used for a working precision p and degree m.
long legendre_bracket_bits(int m, Precision p);
// Shared, immutable isolation for (m, p); computed once per process.
std::shared_ptr<const ShiftedLegendre> shifted_legendre(int m, Precision p);

// Enclosure of F_{m,m,delta} = int_0^1 (1+delta t)^{m+1} |f_m^{(m)}(t)| dt / ||f_m||_1,
// integrated exactly piece by piece between the Legendre breakpoints.
Interval legendre_Fmm(int m, const BigRational& delta, Precision p);
DirectedValue legendre_Fmm_upper(int m, const BigRational& delta, Precision p);

struct FEnclosure {
  std::optional<BigRational> exact;  // present for k = 0 and k = 1
  Interval value;                    // certified enclosure of F_k
  Interval a_priori;                 // [1, 1+delta], [lambda0, lambda1] or [0, lambda]

  DirectedValue lower() const { return value.down(); }
  DirectedValue upper() const { return value.up(); }
};

// k must be 0, 1 or m; anything else throws std::invalid_argument.
FEnclosure F(int k, int m, const BigRational& delta, Precision p);

// Quantities of the weight that depend on (m, delta) only.
struct WeightCore {
  int m;
  BigRational delta;
  Precision precision;
  BigRational norm1;
  FEnclosure F0;
  FEnclosure F1;
  FEnclosure Fmm;  // value = [lower, min(legendre upper, lambda)]
};

WeightCore make_weight_core(int m, const BigRational& delta, Precision p);

struct WeightProfile {
  WeightCore core;
  BigRational a;
  BigRational nu_a;
  BigRational mid_mass;  // int_a^{1-a} f_m

  int m() const noexcept { return core.m; }
  const BigRational& delta() const noexcept { return core.delta; }
  const BigRational& norm1() const noexcept { return core.norm1; }
  DirectedValue Fmm_upper() const { return core.Fmm.upper(); }
};

WeightProfile make_weight_profile(WeightCore core, const BigRational& a);
WeightProfile make_weight_profile(int m, const BigRational& delta, const BigRational& a, Precision p);

}  // namespace primecert
