#pragma once

// Parameter search maximizing the certified Delta for a given x0, and
// re-certification of the published parameter table.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "primecert/certifier.hpp"

namespace primecert {

struct SearchSpec {
  X0Literal x0;
  int m_min = 2;
  int m_max = 80;
  BigRational delta_min = BigRational(1, 10000000000);
  BigRational delta_max = BigRational(1, 10000);
  int delta_per_decade = 3;
  BigRational a_step = BigRational(1, 10000);
  std::vector<BigRational> sigma0_choices;  // empty: every density row
  long budget = 20000;
  Precision precision = kDefaultPrecision;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate(const ZetaConstants& c) const;
};

struct TraceEntry {
  int m;
  BigRational delta;
  BigRational a;
  BigRational T1;
  BigRational sigma0;
  Verdict verdict;  // FAIL also stands for a rejected parameter system
  double margin;
  double Delta;
};

enum class SearchStatus { OK, NO_CERTIFICATE };
std::string_view to_string(SearchStatus s);

struct TableRow;

struct SearchResult {
  SearchStatus status;
  std::optional<Certificate> best;  // PASS whenever status is OK
  double Delta_best = 0;            // lower end of best->params.Delta
  long certificates_used = 0;
  std::vector<TraceEntry> trace;
  std::vector<std::string> dominated_rows;  // table rows whose claim the result covers
};

// key=value lines (x0, m_min, m_max, delta_min, delta_max, delta_per_decade,
// a_step, sigma0 as a comma list, budget, precision, threads) over `base`.
SearchSpec parse_search_spec(std::istream& in, SearchSpec base = {});

SearchResult optimize(const SearchSpec& spec, const ZetaConstants& c);

struct TableRow {
  std::string label;  // log x0 column as printed
  std::string x0;     // literal accepted by X0Literal::parse
  int m;
  std::string delta;
  std::string T1;
  std::string sigma0;
  std::string a;
  long long Delta;

  CertInputs inputs() const;
};

const std::vector<TableRow>& table2_rows();

struct RowCheck {
  TableRow row;
  Certificate cert;
  double Delta_recomputed;  // lower end
  double relative_gap;      // Delta_recomputed / row.Delta - 1
};

// Rows selected by label; empty selects all. Rows are certified concurrently.
std::vector<RowCheck> reproduce_table(const std::vector<std::string>& labels, const ZetaConstants& c,
                                      Precision p = kDefaultPrecision, unsigned threads = 0);

}  // namespace primecert
