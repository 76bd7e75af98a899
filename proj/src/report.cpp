#include "primecert/report.hpp"

#include <charconv>

#include <json.hpp>
#include <map>
#include <sstream>

#include "primecert/errors.hpp"

namespace primecert {

namespace {

constexpr int kDigits = 20;

void add_down(ReportFields& f, const std::string& key, const Interval& x) {
  f.emplace_back(key + ".down", x.down().to_string(kDigits));
}

void add_up(ReportFields& f, const std::string& key, const Interval& x) {
  f.emplace_back(key + ".up", x.up().to_string(kDigits));
}

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

ReportFields report_fields(const Certificate& cert, const ZetaConstants& c) {
  const CertParams& prm = cert.params;
  const SigmaBreakdown& b = cert.breakdown;
  ReportFields f;
  f.emplace_back("format", kReportFormat);
  f.emplace_back("verdict", std::string(to_string(cert.verdict)));
  f.emplace_back("x0", prm.inputs.x0.text);
  f.emplace_back("m", std::to_string(prm.m()));
  f.emplace_back("delta", format_rational(prm.delta()));
  f.emplace_back("a", format_rational(prm.a()));
  f.emplace_back("T1", format_rational(prm.T1()));
  f.emplace_back("sigma0", format_rational(prm.sigma0()));
  f.emplace_back("precision", std::to_string(cert.precision_used));
  f.emplace_back("retries", std::to_string(cert.retries));
  f.emplace_back("constants_id", cert.constants_id);
  f.emplace_back("q_variant", std::string(to_string(cert.q_variant)));
  f.emplace_back("u", format_rational(prm.u));
  add_down(f, "log_X0", prm.log_X0);
  add_down(f, "Delta", prm.Delta);
  add_up(f, "Delta", prm.Delta);
  f.emplace_back("Delta_floor", floor_Delta(prm).get_str());
  f.emplace_back("norm1", format_rational(cert.norm1));
  f.emplace_back("nu_a", format_rational(cert.nu_a));
  add_up(f, "omega", cert.omega);
  add_down(f, "F0", cert.positive_term);
  add_up(f, "Sigma01", b.Sigma01);
  add_up(f, "Sigma02", b.Sigma02);
  add_up(f, "Sigma11", b.Sigma11);
  add_up(f, "Sigma12", b.Sigma12);
  f.emplace_back("B0_choice", b.B0_uses_count ? "Sigma02" : "Sigma01");
  f.emplace_back("B1_choice", b.B1_uses_count ? "Sigma12" : "Sigma11");
  add_up(f, "B0", b.B0);
  add_up(f, "B1", b.B1);
  add_up(f, "B2", b.B2);
  add_up(f, "B3_sigma0", b.B3_at_sigma0);
  add_up(f, "B3_one_minus_sigma0", b.B3_at_one_minus_sigma0);
  add_up(f, "B41", b.B41);
  add_up(f, "B42", b.B42);
  add_up(f, "sigma_total", b.total_with_X0_powers);
  add_up(f, "psi_tail_term", cert.psi_tail_term);
  add_up(f, "omega_term", cert.omega_term);
  add_up(f, "bt_term", cert.bt_term);
  add_down(f, "margin", cert.margin);
  add_up(f, "margin", cert.margin);

  std::istringstream constants(serialize_constants(c));
  std::string line;
  while (std::getline(constants, line)) {
    auto eq = line.find('=');
    f.emplace_back("constants." + line.substr(0, eq), line.substr(eq + 1));
  }
  return f;
}

std::string to_key_value(const Certificate& cert, const ZetaConstants& c) {
  std::string out;
  for (const auto& [key, value] : report_fields(cert, c)) out += key + "=" + value + "\n";
  return out;
}

std::string to_json_line(const Certificate& cert, const ZetaConstants& c) {
  nlohmann::ordered_json record = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report_fields(cert, c)) record[key] = value;
  return record.dump();
}

long parse_integer_field(const std::string& key, const std::string& value) {
  long out = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw DataError("report: field '" + key + "' is not an integer: '" + value + "'");
  }
  return out;
}

ParsedReport parse_report(std::string_view text) {
  ReportFields fields;
  std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::ordered_json record;
    try {
      record = nlohmann::ordered_json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("report: invalid JSON: ") + e.what());
    }
    for (const auto& [key, value] : record.items()) {
      if (!value.is_string()) throw DataError("report: field '" + key + "' is not a string");
      fields.emplace_back(key, value.get<std::string>());
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw DataError("report: expected key=value", line_no);
      fields.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
  }

  std::map<std::string, std::string> lookup(fields.begin(), fields.end());
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = lookup.find(key);
    if (it == lookup.end()) throw DataError("report: missing field '" + key + "'");
    return it->second;
  };
  if (need("format") != kReportFormat) throw DataError("report: unsupported format '" + need("format") + "'");

  std::string constants_text;
  for (const auto& [key, value] : fields) {
    if (key.starts_with("constants.")) constants_text += key.substr(10) + "=" + value + "\n";
  }
  std::istringstream constants_in(constants_text);

  ParsedReport out{
      .inputs = {X0Literal::parse(need("x0")), static_cast<int>(parse_integer_field("m", need("m"))), parse_rational(need("delta")),
                 parse_rational(need("a")), parse_rational(need("T1")), parse_rational(need("sigma0"))},
      .constants = parse_constants(constants_in),
      .precision = static_cast<Precision>(parse_integer_field("precision", need("precision"))),
      .verdict = parse_verdict(need("verdict")),
      .fields = std::move(fields),
  };
  return out;
}

Verification verify_report(const ParsedReport& report) {
  Certificate cert = certify_once(report.inputs, report.constants, report.precision);
  return {report.verdict, cert.verdict};
}

}  // namespace primecert
