#include "primecert/zeta_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "primecert/errors.hpp"

namespace primecert {

std::string_view to_string(QVariant v) {
  return v == QVariant::RLog ? "rlog" : "2rt";
}

QVariant parse_q_variant(std::string_view text) {
  if (text == "rlog") return QVariant::RLog;
  if (text == "2rt") return QVariant::TwoROverT;
  throw DataError("unknown q variant '" + std::string(text) + "' (expected rlog or 2rt)");
}

ZetaConstants ZetaConstants::defaults() {
  ZetaConstants c;
  c.H = parse_rational("3.061e10");
  c.T0 = 1132491;
  c.N0 = 2001052;
  c.S0 = parse_rational("11.637732363");
  c.R0 = parse_rational("5.69693");
  c.rosser = {parse_rational("0.137"), parse_rational("0.443"), parse_rational("1.588")};
  static constexpr const char* table[][4] = {
      {"0.90", "5.8494", "0.4659", "-1.7905e11"}, {"0.91", "5.6991", "0.4539", "-1.7444e11"},
      {"0.92", "5.5564", "0.4426", "-1.7007e11"}, {"0.93", "5.4206", "0.4318", "-1.6592e11"},
      {"0.94", "5.2913", "0.4215", "-1.6196e11"}, {"0.95", "5.1680", "0.4116", "-1.5819e11"},
      {"0.96", "5.0503", "0.4023", "-1.5458e11"}, {"0.97", "4.9379", "0.3933", "-1.5114e11"},
      {"0.98", "4.8304", "0.3848", "-1.4785e11"}, {"0.99", "4.7274", "0.3766", "-1.4470e11"},
  };
  for (const auto& row : table) {
    c.density.push_back({parse_rational(row[0]), parse_rational(row[1]), parse_rational(row[2]), parse_rational(row[3])});
  }
  return c;
}

ZetaConstants ZetaConstants::trudgian() {
  ZetaConstants c = defaults();
  for (std::size_t i = 0; i < 3; ++i) c.rosser[i] = parse_rational(kTrudgian[i]);
  c.id = "trudgian";
  return c;
}

void ZetaConstants::validate() const {
  if (!(T0 > 2 && T0 < H)) throw DataError("constants: need 2 < T0 < H");
  if (N0 <= 0) throw DataError("constants: need N0 > 0");
  if (S0 <= 0) throw DataError("constants: need S0 > 0");
  if (R0 <= 0) throw DataError("constants: need R0 > 0");
  const BigRational three_fifths(3, 5);
  for (std::size_t i = 0; i < density.size(); ++i) {
    const auto& row = density[i];
    if (!(row.sigma > three_fifths && row.sigma < 1)) {
      throw DataError("constants: density sigma " + format_rational(row.sigma) + " outside (3/5, 1)");
    }
    if (i > 0 && !(density[i - 1].sigma < row.sigma)) throw DataError("constants: density rows not ascending");
    if (row.c1 <= 0 || row.c2 <= 0) {
      throw DataError("constants: density row " + format_rational(row.sigma) + " needs c1, c2 > 0");
    }
  }
}

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

DensityRow& density_row_for(ZetaConstants& c, const BigRational& sigma) {
  auto it = std::find_if(c.density.begin(), c.density.end(), [&](const DensityRow& r) { return r.sigma == sigma; });
  if (it != c.density.end()) return *it;
  auto pos = std::find_if(c.density.begin(), c.density.end(), [&](const DensityRow& r) { return r.sigma > sigma; });
  // c1 = c2 = 0 fails validation unless the file supplies both.
  return *c.density.insert(pos, DensityRow{sigma, 0, 0, 0});
}

}  // namespace

ZetaConstants parse_constants(std::istream& in, ZetaConstants base) {
  std::string raw;
  std::size_t line_no = 0;
  bool rosser_changed = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("constants: expected key=value", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "H") base.H = parse_rational(value);
      else if (key == "T0") base.T0 = parse_rational(value);
      else if (key == "N0") {
        BigRational n = parse_rational(value);
        if (n.get_den() != 1) throw DataError("N0 must be an integer");
        base.N0 = n.get_num();
      } else if (key == "S0") base.S0 = parse_rational(value);
      else if (key == "R0") base.R0 = parse_rational(value);
      else if (key == "a1" || key == "a2" || key == "a3") {
        BigRational coefficient = parse_rational(value);
        rosser_changed |= coefficient != base.rosser[key[1] - '1'];
        base.rosser[key[1] - '1'] = coefficient;
      } else if (key == "q.variant") base.q_variant = parse_q_variant(value);
      else if (key == "id") base.id = value;
      else if (key.starts_with("density.")) {
        auto dot = key.rfind('.');
        std::string field = key.substr(dot + 1);
        BigRational sigma = parse_rational(key.substr(8, dot - 8));
        DensityRow& row = density_row_for(base, sigma);
        if (field == "c1") row.c1 = parse_rational(value);
        else if (field == "c2") row.c2 = parse_rational(value);
        else if (field == "c3") row.c3 = parse_rational(value);
        else throw DataError("unknown density field '" + field + "'");
      } else {
        throw DataError("unknown key '" + key + "'");
      }
    } catch (const DataError& e) {
      if (e.line() != 0) throw;
      throw DataError(std::string("constants: ") + e.what(), line_no);
    }
  }
  if (rosser_changed && base.id == "rosser") base.id = "custom";
  base.validate();
  return base;
}

ZetaConstants load_constants(const std::filesystem::path& path, ZetaConstants base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open constants file " + path.string());
  base.id = "file:" + path.filename().string();
  return parse_constants(in, std::move(base));
}

std::string serialize_constants(const ZetaConstants& c) {
  std::ostringstream out;
  out << "id=" << c.id << '\n'
      << "H=" << format_rational(c.H) << '\n'
      << "T0=" << format_rational(c.T0) << '\n'
      << "N0=" << c.N0.get_str() << '\n'
      << "S0=" << format_rational(c.S0) << '\n'
      << "R0=" << format_rational(c.R0) << '\n';
  for (int i = 0; i < 3; ++i) out << 'a' << (i + 1) << '=' << format_rational(c.rosser[i]) << '\n';
  for (const auto& row : c.density) {
    std::string s = format_rational(row.sigma);
    out << "density." << s << ".c1=" << format_rational(row.c1) << '\n'
        << "density." << s << ".c2=" << format_rational(row.c2) << '\n'
        << "density." << s << ".c3=" << format_rational(row.c3) << '\n';
  }
  out << "q.variant=" << to_string(c.q_variant) << '\n';
  return out.str();
}

// ---- counting function -----------------------------------------------------

Interval R(const Interval& T, const ZetaConstants& c) {
  if (mpfr_cmp_ui(T.lo().get(), 2) < 0) {
    throw ConstraintError(ConstraintCode::DOMAIN, "R(T) needs T >= 2");
  }
  Interval logT = log(T);
  return logT * c.rosser[0] + log(logT) * c.rosser[1] + c.rosser[2];
}

DirectedValue R_upper(const BigRational& T, const ZetaConstants& c, Precision p) {
  return R(Interval::from(T, p), c).up();
}

Interval P(const Interval& T) {
  Interval scaled = T / (Interval::pi(T.precision()) * BigRational(2));
  return scaled * log(scaled) - scaled + BigRational(7, 8);
}

std::pair<BigInt, BigInt> N_bounds(const BigRational& T, const ZetaConstants& c, Precision p) {
  Interval t = Interval::from(T, p);
  Interval main = P(t);
  Interval err = R(t, c);
  Interval low = main - err;
  Interval high = main + err;
  BigInt lower, upper;
  mpfr_get_z(lower.get_mpz_t(), low.lo().get(), MPFR_RNDU);
  mpfr_get_z(upper.get_mpz_t(), high.hi().get(), MPFR_RNDD);
  if (lower < 0) lower = 0;
  return {lower, upper};
}

const DensityRow& density_coeffs(const BigRational& sigma0, const ZetaConstants& c) {
  for (const auto& row : c.density) {
    if (row.sigma == sigma0) return row;
  }
  throw ConstraintError(ConstraintCode::SIGMA0_ROW, "sigma0 = " + format_rational(sigma0) + " is not a density table row");
}

// ---- zero files ------------------------------------------------------------

ZeroList parse_zeros(std::istream& in, std::optional<std::size_t> max_count) {
  ZeroList zeros;
  std::string raw;
  std::size_t line_no = 0;
  while ((!max_count || zeros.count() < *max_count) && std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    char* end = nullptr;
    double gamma = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0' || !std::isfinite(gamma) || gamma <= 0) {
      throw DataError("unparsable zero ordinate '" + line + "'", line_no);
    }
    if (!zeros.ordinates.empty() && !(gamma > zeros.ordinates.back())) {
      throw DataError("zero ordinates not strictly increasing", line_no);
    }
    zeros.ordinates.push_back(gamma);
  }
  return zeros;
}

ZeroList load_zeros(const std::filesystem::path& path, std::optional<std::size_t> max_count) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open zeros file " + path.string());
  return parse_zeros(in, max_count);
}

ZeroStats zero_stats(const ZeroList& zeros, double T, Precision p) {
  check_precision(p);
  if (T > zeros.max_height()) {
    throw DataError("T exceeds zero file coverage (max height " + std::to_string(zeros.max_height()) + ")");
  }
  auto end = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), T);
  Real sum(p), term(p);
  mpfr_set_zero(sum.get(), 1);
  for (auto it = zeros.ordinates.begin(); it != end; ++it) {
    // The stored double may sit above the decimal in the file; step one ulp down.
    mpfr_set_d(term.get(), std::nextafter(*it, 0.0), MPFR_RNDD);
    mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDU);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDU);
  }
  return {static_cast<std::size_t>(end - zeros.ordinates.begin()), {std::move(sum), Direction::Up}};
}

bool validate_against_zeros(const ZetaConstants& c, const ZeroList& zeros) {
  double T0 = c.T0.get_d();
  if (zeros.max_height() < T0) return false;
  ZeroStats stats = zero_stats(zeros, T0);
  if (BigInt(static_cast<unsigned long>(stats.count)) != c.N0) {
    throw DataError("zero file gives N(T0) = " + std::to_string(stats.count) + ", constants say " + c.N0.get_str());
  }
  double gap = std::abs(stats.inv_sum.to_double() - c.S0.get_d());
  if (gap > 1e-9) {
    throw DataError("zero file gives S0 = " + stats.inv_sum.to_string(15) + ", constants say " + format_rational(c.S0));
  }
  return true;
}

ZetaConstants rebase(const ZetaConstants& c, const ZeroList& zeros, const BigRational& T0) {
  ZeroStats stats = zero_stats(zeros, T0.get_d());
  ZetaConstants out = c;
  out.T0 = T0;
  out.N0 = static_cast<unsigned long>(stats.count);
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, stats.inv_sum.value.get());
  out.S0 = BigRational(q);
  mpq_clear(q);
  out.id = c.id + "@T0=" + format_rational(T0);
  return out;
}

}  // namespace primecert
