#pragma once

// Numerical inputs about the zeros of the Riemann zeta function: the
// verification height, counts and reciprocal sums below T0, the zero-free
// region constant, the Rosser error term and the zero-density table.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primecert/numerics.hpp"

namespace primecert {

// Which q(T) enters the zero-sum bounds S1..S3.
enum class QVariant {
  RLog,      // R(T) / (T log(T / 2 pi))
  TwoROverT  // 2 R(T) / T
};

std::string_view to_string(QVariant v);
QVariant parse_q_variant(std::string_view text);

// N(sigma, T) <= c1 T + c2 log T + c3
struct DensityRow {
  BigRational sigma;
  BigRational c1;
  BigRational c2;
  BigRational c3;
};

struct ZetaConstants {
  BigRational H;
  BigRational T0;
  BigInt N0;
  BigRational S0;
  BigRational R0;
  std::array<BigRational, 3> rosser;  // a1, a2, a3
  std::vector<DensityRow> density;    // ascending in sigma
  QVariant q_variant = QVariant::RLog;
  std::string id = "rosser";

  static ZetaConstants defaults();
  // Same data with Trudgian's (0.111, 0.275, 2.450) in place of Rosser's.
  static ZetaConstants trudgian();
  static constexpr std::array<const char*, 3> kTrudgian = {"0.111", "0.275", "2.450"};

  // Throws DataError on a broken invariant.
  void validate() const;
};

// key=value overrides on top of `base`; '#' starts a comment.
ZetaConstants parse_constants(std::istream& in, ZetaConstants base = ZetaConstants::defaults());
ZetaConstants load_constants(const std::filesystem::path& path, ZetaConstants base = ZetaConstants::defaults());
// key=value text that parse_constants reads back to the same constants.
std::string serialize_constants(const ZetaConstants& c);

// R(T) = a1 log T + a2 log log T + a3; T must be >= 2.
Interval R(const Interval& T, const ZetaConstants& c);
DirectedValue R_upper(const BigRational& T, const ZetaConstants& c, Precision p);
// P(T) = T/(2 pi) log(T/(2 pi)) - T/(2 pi) + 7/8
Interval P(const Interval& T);

// (ceil(P - R), floor(P + R)), so N(T) lies in the returned closed range.
std::pair<BigInt, BigInt> N_bounds(const BigRational& T, const ZetaConstants& c, Precision p = kDefaultPrecision);

// Exact row lookup; no interpolation. Throws ConstraintError(SIGMA0_ROW).
const DensityRow& density_coeffs(const BigRational& sigma0, const ZetaConstants& c);

struct ZeroList {
  std::vector<double> ordinates;

  std::size_t count() const noexcept { return ordinates.size(); }
  double max_height() const noexcept { return ordinates.empty() ? 0.0 : ordinates.back(); }
};

ZeroList parse_zeros(std::istream& in, std::optional<std::size_t> max_count = std::nullopt);
ZeroList load_zeros(const std::filesystem::path& path, std::optional<std::size_t> max_count = std::nullopt);

struct ZeroStats {
  std::size_t count;
  DirectedValue inv_sum;  // Up-rounded sum of 1/gamma over gamma <= T
};

// Throws DataError when T exceeds the file's coverage.
ZeroStats zero_stats(const ZeroList& zeros, double T, Precision p = kDefaultPrecision);

// Recomputes N0 and S0 from a zero list that reaches T0. Returns false when
// the list is too short to decide; throws DataError on a mismatch.
bool validate_against_zeros(const ZetaConstants& c, const ZeroList& zeros);

// Constants for a lower base height T0, with N0 and S0 taken from the zeros.
ZetaConstants rebase(const ZetaConstants& c, const ZeroList& zeros, const BigRational& T0);

}  // namespace primecert
