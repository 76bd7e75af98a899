#include "primecert/optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <istream>
#include <map>
#include <sstream>

#include "parallel.hpp"
#include "primecert/errors.hpp"

namespace primecert {

using detail::parallel_map;
using detail::worker_count;

std::string_view to_string(SearchStatus s) {
  return s == SearchStatus::OK ? "OK" : "NO_CERTIFICATE";
}

void SearchSpec::validate(const ZetaConstants& c) const {
  if (m_min < 2 || m_max < m_min) throw ConstraintError(ConstraintCode::M_RANGE, "need 2 <= m_min <= m_max");
  if (delta_min <= 0 || delta_max > BigRational(1, 10000) || delta_min > delta_max) {
    throw ConstraintError(ConstraintCode::DELTA_RANGE, "need 0 < delta_min <= delta_max <= 1e-4");
  }
  if (delta_per_decade < 1) throw std::invalid_argument("delta grid needs at least one point per decade");
  if (a_step <= 0 || a_step > BigRational(1, 2)) throw ConstraintError(ConstraintCode::A_RANGE, "a step outside (0, 1/2]");
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  for (const auto& s : sigma0_choices) density_coeffs(s, c);
  check_precision(precision);
}

SearchSpec parse_search_spec(std::istream& in, SearchSpec base) {
  auto trim = [](std::string s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  auto integer = [](const std::string& text) {
    long out = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || end != text.data() + text.size()) throw std::invalid_argument(text);
    return out;
  };
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("search spec: expected key=value", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "x0") base.x0 = X0Literal::parse(value);
      else if (key == "m_min") base.m_min = static_cast<int>(integer(value));
      else if (key == "m_max") base.m_max = static_cast<int>(integer(value));
      else if (key == "delta_min") base.delta_min = parse_rational(value);
      else if (key == "delta_max") base.delta_max = parse_rational(value);
      else if (key == "delta_per_decade") base.delta_per_decade = static_cast<int>(integer(value));
      else if (key == "a_step") base.a_step = parse_rational(value);
      else if (key == "budget") base.budget = integer(value);
      else if (key == "precision") base.precision = integer(value);
      else if (key == "threads") base.threads = static_cast<unsigned>(integer(value));
      else if (key == "sigma0") {
        base.sigma0_choices.clear();
        std::istringstream items(value);
        for (std::string item; std::getline(items, item, ',');) base.sigma0_choices.push_back(parse_rational(trim(item)));
      } else {
        throw DataError("search spec: unknown key '" + key + "'", line_no);
      }
    } catch (const DataError& e) {
      if (e.line() != 0) throw;
      throw DataError(std::string("search spec: ") + e.what(), line_no);
    } catch (const std::logic_error&) {
      throw DataError("search spec: unparsable value for '" + key + "'", line_no);
    }
  }
  return base;
}

namespace {

// Nearest value with `digits` significant decimal digits.
BigRational snap(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*e", digits - 1, value);
  return parse_rational(buffer);
}

double to_log(const BigRational& q) { return std::log(q.get_d()); }

template <class F>
void golden_max(double lo, double hi, int iterations, F&& f) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
}

struct Probe {
  bool feasible = false;
  int m = 0;
  BigRational sigma0, delta, T1, a;
  double Delta = 0;
  std::optional<Certificate> cert;
};

bool lexicographically_smaller(const Probe& x, const Probe& y) {
  if (x.m != y.m) return x.m < y.m;
  if (x.delta != y.delta) return x.delta < y.delta;
  if (x.a != y.a) return x.a < y.a;
  if (x.T1 != y.T1) return x.T1 < y.T1;
  return x.sigma0 < y.sigma0;
}

bool better(const Probe& x, const Probe& y) {
  if (x.feasible != y.feasible) return x.feasible;
  if (!x.feasible) return false;
  if (x.Delta != y.Delta) return x.Delta > y.Delta;
  return lexicographically_smaller(x, y);
}

struct Effort {
  int t1_iterations;
  int delta_iterations;
};

constexpr int kVerifyAttempts = 4;

long probe_cost(const Effort& e) { return e.t1_iterations + 2 + kVerifyAttempts; }

class Worker {
 public:
  Worker(const SearchSpec& spec, const ZetaConstants& c) : spec_(spec), c_(c) {}

  long used = 0;
  std::vector<TraceEntry> trace;

  std::optional<Certificate> evaluate(const CertInputs& in, const WeightCore& core) {
    ++used;
    try {
      Certificate cert = certify_once(in, core, c_);
      trace.push_back({in.m, in.delta, in.a, in.T1, in.sigma0, cert.verdict, cert.margin.mid(),
                       cert.params.Delta.lo().to_double(MPFR_RNDD)});
      return cert;
    } catch (const ConstraintError&) {
      trace.push_back({in.m, in.delta, in.a, in.T1, in.sigma0, Verdict::FAIL,
                       std::numeric_limits<double>::quiet_NaN(), 0.0});
      return std::nullopt;
    }
  }

  // Best T1 at a = 0, then the largest admissible a on the a_step grid.
  Probe probe(int m, const BigRational& sigma0, const BigRational& delta, const Effort& effort) {
    Probe out;
    out.m = m;
    out.sigma0 = sigma0;
    out.delta = delta;
    CertInputs in{spec_.x0, m, delta, 0, c_.H, sigma0};
    std::optional<WeightCore> core;
    try {
      derive_params(in, spec_.precision);
      core.emplace(make_weight_core(m, delta, spec_.precision));
    } catch (const ConstraintError&) {
      return out;
    }

    std::optional<Certificate> best;
    BigRational T1_floor = c_.T0 + 1;
    golden_max(to_log(T1_floor), to_log(c_.H), effort.t1_iterations, [&](double x) {
      BigRational T1(floor(BigRational(std::exp(x))));
      T1 = std::clamp(T1, T1_floor, c_.H);
      in.T1 = T1;
      auto cert = evaluate(in, *core);
      if (!cert) return -std::numeric_limits<double>::infinity();
      if (!best || best->margin.lo() < cert->margin.lo()) best = cert;
      return cert->margin.mid();
    });
    if (!best) return out;
    out.T1 = best->params.T1();
    if (best->verdict != Verdict::PASS) return out;

    // Screen a by the a = 0 margin minus bt(a), then certify the pick.
    Interval ratio = bt_log_ratio(best->params) * (2 * (1 + delta) / core->norm1);
    auto admissible = [&](long k) {
      Interval bt = ratio * nu(m, spec_.a_step * k);
      return (best->margin - bt).certainly_positive();
    };
    long lo = 0;
    long hi = static_cast<long>(floor(BigRational(1, 2) / spec_.a_step).get_si()) + 1;
    while (hi - lo > 1) {
      long mid = lo + (hi - lo) / 2;
      (admissible(mid) ? lo : hi) = mid;
    }
    in.T1 = out.T1;
    for (int attempt = 0; attempt < kVerifyAttempts && lo >= 0; ++attempt, --lo) {
      in.a = spec_.a_step * lo;
      auto cert = evaluate(in, *core);
      if (cert && cert->verdict == Verdict::PASS) {
        out.feasible = true;
        out.a = in.a;
        out.Delta = cert->params.Delta.lo().to_double(MPFR_RNDD);
        out.cert = std::move(cert);
        break;
      }
    }
    return out;
  }

  // Golden refinement of Delta over log delta in [lo, hi].
  Probe refine_delta(int m, const BigRational& sigma0, double lo, double hi, const Effort& effort, Probe best) {
    std::map<BigRational, double> seen;
    golden_max(lo, hi, effort.delta_iterations, [&](double x) {
      BigRational delta = std::clamp(snap(std::exp(x), 4), spec_.delta_min, spec_.delta_max);
      if (auto it = seen.find(delta); it != seen.end()) return it->second;
      Probe p = probe(m, sigma0, delta, effort);
      double value = p.feasible ? p.Delta : 0.0;
      seen.emplace(delta, value);
      if (better(p, best)) best = std::move(p);
      return value;
    });
    return best;
  }

  Probe search_delta(int m, const BigRational& sigma0, const std::vector<BigRational>& grid, const Effort& effort) {
    Probe best;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Probe p = probe(m, sigma0, grid[i], effort);
      if (better(p, best)) {
        best = std::move(p);
        best_index = i;
      }
    }
    if (!best.feasible) return best;
    double lo = to_log(grid[best_index == 0 ? 0 : best_index - 1]);
    double hi = to_log(grid[std::min(best_index + 1, grid.size() - 1)]);
    return refine_delta(m, sigma0, lo, hi, effort, std::move(best));
  }

 private:
  const SearchSpec& spec_;
  const ZetaConstants& c_;
};

std::vector<BigRational> delta_grid(const SearchSpec& spec) {
  std::vector<BigRational> grid;
  double lo = to_log(spec.delta_min), hi = to_log(spec.delta_max);
  double step = std::log(10.0) / spec.delta_per_decade;
  for (double x = lo; x <= hi + 1e-12; x += step) {
    BigRational d = std::clamp(snap(std::exp(x), 4), spec.delta_min, spec.delta_max);
    if (grid.empty() || grid.back() != d) grid.push_back(d);
  }
  return grid;
}

std::vector<int> coarse_m(const SearchSpec& spec) {
  std::vector<int> out;
  for (int m = spec.m_min; m < spec.m_max; m += std::max(1, m / 5)) out.push_back(m);
  out.push_back(spec.m_max);
  return out;
}

}  // namespace

SearchResult optimize(const SearchSpec& spec, const ZetaConstants& c) {
  c.validate();
  spec.validate(c);
  const unsigned threads = worker_count(spec.threads);

  std::vector<BigRational> sigmas = spec.sigma0_choices;
  if (sigmas.empty()) {
    for (const auto& row : c.density) sigmas.push_back(row.sigma);
  }
  if (sigmas.empty()) throw ConstraintError(ConstraintCode::SIGMA0_ROW, "no density rows available");
  BigRational primary = sigmas.front();
  for (const auto& s : sigmas) {
    if (s == BigRational(93, 100)) primary = s;
  }

  const std::vector<BigRational> grid = delta_grid(spec);
  const Effort coarse{6, 6};
  const long coarse_cost = static_cast<long>(grid.size() + coarse.delta_iterations + 2) * probe_cost(coarse);

  SearchResult result{SearchStatus::NO_CERTIFICATE, std::nullopt, 0, 0, {}, {}};
  Probe best;
  auto absorb = [&](std::vector<std::pair<Worker, Probe>>& done) {
    for (auto& [worker, probe] : done) {
      result.certificates_used += worker.used;
      result.trace.insert(result.trace.end(), worker.trace.begin(), worker.trace.end());
      if (better(probe, best)) best = probe;
    }
  };
  auto remaining = [&] { return spec.budget - result.certificates_used; };
  auto affordable = [&](std::size_t tasks, long each) {
    return static_cast<std::size_t>(std::min<long>(static_cast<long>(tasks), std::max(0L, remaining() / each)));
  };

  // Coarse scan over m.
  std::vector<int> ms = coarse_m(spec);
  ms.resize(affordable(ms.size(), coarse_cost));
  std::map<int, double> by_m;
  {
    auto done = parallel_map(ms.size(), threads, [&](std::size_t i) {
      Worker w(spec, c);
      Probe p = w.search_delta(ms[i], primary, grid, coarse);
      return std::make_pair(std::move(w), std::move(p));
    });
    for (std::size_t i = 0; i < ms.size(); ++i) by_m[ms[i]] = done[i].second.feasible ? done[i].second.Delta : 0.0;
    absorb(done);
  }

  // Integer ternary search between the coarse neighbours of the best m.
  if (best.feasible) {
    auto it = std::find(ms.begin(), ms.end(), best.m);
    int lo = it == ms.begin() ? best.m : *(it - 1);
    int hi = (it + 1 == ms.end()) ? best.m : *(it + 1);
    while (hi - lo > 2) {
      int m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      std::vector<int> todo;
      for (int m : {m1, m2}) {
        if (!by_m.contains(m)) todo.push_back(m);
      }
      if (affordable(todo.size(), coarse_cost) < todo.size()) break;
      auto done = parallel_map(todo.size(), threads, [&](std::size_t i) {
        Worker w(spec, c);
        Probe p = w.search_delta(todo[i], primary, grid, coarse);
        return std::make_pair(std::move(w), std::move(p));
      });
      for (std::size_t i = 0; i < todo.size(); ++i) by_m[todo[i]] = done[i].second.feasible ? done[i].second.Delta : 0.0;
      absorb(done);
      if (by_m[m1] >= by_m[m2]) hi = m2;
      else lo = m1;
    }
    std::vector<int> todo;
    for (int m = lo; m <= hi; ++m) {
      if (!by_m.contains(m)) todo.push_back(m);
    }
    todo.resize(affordable(todo.size(), coarse_cost));
    auto done = parallel_map(todo.size(), threads, [&](std::size_t i) {
      Worker w(spec, c);
      Probe p = w.search_delta(todo[i], primary, grid, coarse);
      return std::make_pair(std::move(w), std::move(p));
    });
    absorb(done);
  }

  // Other density rows around the best (m, delta).
  if (best.feasible) {
    std::vector<BigRational> others;
    for (const auto& s : sigmas) {
      if (s != primary) others.push_back(s);
    }
    const Effort local{6, 8};
    const long local_cost = static_cast<long>(local.delta_iterations + 2) * probe_cost(local);
    others.resize(affordable(others.size(), local_cost));
    const Probe anchor = best;
    auto done = parallel_map(others.size(), threads, [&](std::size_t i) {
      Worker w(spec, c);
      double centre = to_log(anchor.delta);
      Probe p = w.refine_delta(anchor.m, others[i], centre - 0.25, centre + 0.25, local, Probe{});
      return std::make_pair(std::move(w), std::move(p));
    });
    absorb(done);
  }

  // Final polish with a finer T1 search.
  if (best.feasible) {
    const Effort fine{18, 12};
    const long fine_cost = static_cast<long>(fine.delta_iterations + 2) * probe_cost(fine);
    if (remaining() >= fine_cost) {
      Worker w(spec, c);
      double centre = to_log(best.delta);
      Probe seed = w.probe(best.m, best.sigma0, best.delta, fine);
      Probe p = w.refine_delta(best.m, best.sigma0, centre - 0.12, centre + 0.12, fine, std::move(seed));
      std::vector<std::pair<Worker, Probe>> done;
      done.emplace_back(std::move(w), std::move(p));
      absorb(done);
    }
  }

  if (best.feasible && best.cert) {
    result.status = SearchStatus::OK;
    result.Delta_best = best.Delta;
    result.best = std::move(best.cert);
    double log_x0 = spec.x0.log_enclose(spec.precision).mid();
    for (const auto& row : table2_rows()) {
      double row_log = X0Literal::parse(row.x0).log_enclose(kMinPrecision).mid();
      if (row_log >= log_x0 && static_cast<double>(row.Delta) <= result.Delta_best) {
        result.dominated_rows.push_back(row.label);
      }
    }
  }
  return result;
}

// ---- published table -------------------------------------------------------

CertInputs TableRow::inputs() const {
  return {X0Literal::parse(x0), m, parse_rational(delta), parse_rational(a), parse_rational(T1), parse_rational(sigma0)};
}

const std::vector<TableRow>& table2_rows() {
  static const std::vector<TableRow> rows = {
      {"4e18", "4e18", 5, "3.580e-8", "272519712", "0.92", "0.2129", 36082898},
      {"43", "e43", 5, "3.349e-8", "291316980", "0.92", "0.2147", 38753947},
      {"44", "e44", 6, "2.330e-8", "488509984", "0.92", "0.2324", 61162616},
      {"45", "e45", 7, "1.628e-8", "797398875", "0.92", "0.2494", 95381241},
      {"46", "e46", 8, "1.134e-8", "1284120197", "0.92", "0.2651", 148306019},
      {"47", "e47", 9, "8.080e-9", "1996029891", "0.92", "0.2836", 227619375},
      {"48", "e48", 11, "6.000e-9", "3204848430", "0.93", "0.3050", 346582570},
      {"49", "e49", 15, "4.682e-9", "5415123831", "0.93", "0.3275", 518958776},
      {"50", "e50", 20, "3.889e-9", "8466793105", "0.93", "0.3543", 753575355},
      {"51", "e51", 28, "3.625e-9", "12399463961", "0.93", "0.3849", 1037917449},
      {"52", "e52", 39, "3.803e-9", "16139006408", "0.93", "0.4127", 1313524036},
      {"53", "e53", 48, "4.088e-9", "18290358817", "0.93", "0.4301", 1524171138},
      {"54", "e54", 54, "4.311e-9", "19412056863", "0.93", "0.4398", 1670398039},
      {"55", "e55", 56, "4.386e-9", "19757119193", "0.93", "0.4445", 1770251249},
      {"56", "e56", 59, "4.508e-9", "20210075547", "0.93", "0.4481", 1838818070},
      {"57", "e57", 59, "4.506e-9", "20219045843", "0.93", "0.4496", 1886389443},
      {"58", "e58", 61, "4.590e-9", "20495459359", "0.93", "0.4514", 1920768795},
      {"59", "e59", 61, "4.589e-9", "20499925573", "0.93", "0.4522", 1946282821},
      {"60", "e60", 61, "4.588e-9", "20504393735", "0.93", "0.4527", 1966196911},
      {"150", "e150", 64, "4.685e-9", "21029543983", "0.96", "0.4641", 2442159714},
  };
  return rows;
}

std::vector<RowCheck> reproduce_table(const std::vector<std::string>& labels, const ZetaConstants& c, Precision p,
                                      unsigned threads) {
  std::vector<TableRow> selected;
  for (const auto& row : table2_rows()) {
    if (labels.empty() || std::find(labels.begin(), labels.end(), row.label) != labels.end()) selected.push_back(row);
  }
  for (const auto& label : labels) {
    bool known = std::any_of(table2_rows().begin(), table2_rows().end(), [&](const TableRow& r) { return r.label == label; });
    if (!known) throw DataError("no table row labelled '" + label + "'");
  }
  return parallel_map(selected.size(), worker_count(threads), [&](std::size_t i) {
    Certificate cert = certify(selected[i].inputs(), c, p);
    double Delta = cert.params.Delta.lo().to_double(MPFR_RNDD);
    return RowCheck{selected[i], std::move(cert), Delta, Delta / static_cast<double>(selected[i].Delta) - 1};
  });
}

}  // namespace primecert
