#pragma once

// Certificate reports: a flat key=value text and a single-line JSON record
// carrying the same fields. Each real is printed rounded in the direction
// named by its key suffix (.down or .up).

#include <string>
#include <utility>
#include <vector>

#include "primecert/certifier.hpp"

namespace primecert {

inline constexpr const char* kReportFormat = "primecert-certificate/1";

using ReportFields = std::vector<std::pair<std::string, std::string>>;

ReportFields report_fields(const Certificate& cert, const ZetaConstants& c);
std::string to_key_value(const Certificate& cert, const ZetaConstants& c);
std::string to_json_line(const Certificate& cert, const ZetaConstants& c);

struct ParsedReport {
  CertInputs inputs;
  ZetaConstants constants;
  Precision precision;
  Verdict verdict;
  ReportFields fields;
};

// Accepts either serialization; throws DataError on malformed input.
ParsedReport parse_report(std::string_view text);

struct Verification {
  Verdict reported;
  Verdict recomputed;
  bool matches() const noexcept { return reported == recomputed; }
};

// Re-runs the certificate at the reported precision.
Verification verify_report(const ParsedReport& report);

}  // namespace primecert
