#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "primecert/errors.hpp"
#include "primecert/optimizer.hpp"
#include "primecert/report.hpp"

using namespace primecert;

namespace {

const TableRow& row(const std::string& label) {
  for (const TableRow& r : table2_rows())
    if (r.label == label) return r;
  throw std::out_of_range(label);
}

std::string value_of(const ReportFields& fields, const std::string& key) {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return {};
}

std::string replace_line(std::string text, const std::string& key, const std::string& value) {
  text.insert(0, "\n");
  std::size_t at = text.find("\n" + key + "=");
  REQUIRE(at != std::string::npos);
  std::size_t end = text.find('\n', at + 1);
  return text.substr(1, at) + key + "=" + value + text.substr(end);
}

}  // namespace

TEST_CASE("key=value report round-trips") {
  ZetaConstants c = ZetaConstants::defaults();
  CertInputs in = row("4e18").inputs();
  Certificate cert = certify(in, c);
  std::string text = to_key_value(cert, c);
  CHECK(text.rfind("format=primecert-certificate/1\n", 0) == 0);

  ParsedReport parsed = parse_report(text);
  CHECK(parsed.inputs.x0.text == "4e18");
  CHECK(parsed.inputs.m == 5);
  CHECK(parsed.inputs.delta == in.delta);
  CHECK(parsed.inputs.a == in.a);
  CHECK(parsed.inputs.T1 == in.T1);
  CHECK(parsed.inputs.sigma0 == in.sigma0);
  CHECK(parsed.precision == 192);
  CHECK(parsed.verdict == Verdict::PASS);
  CHECK(parsed.constants.N0 == c.N0);
  CHECK(serialize_constants(parsed.constants) == serialize_constants(c));
  CHECK(value_of(parsed.fields, "Delta_floor") == floor_Delta(cert.params).get_str());
  CHECK(value_of(parsed.fields, "B0_choice") == "Sigma02");
  CHECK(verify_report(parsed).matches());
}

TEST_CASE("every real is printed in the direction of its key") {
  ZetaConstants c = ZetaConstants::defaults();
  Certificate cert = certify(row("59").inputs(), c);
  ReportFields fields = report_fields(cert, c);
  BigRational margin_down = parse_rational(value_of(fields, "margin.down"));
  BigRational margin_up = parse_rational(value_of(fields, "margin.up"));
  CHECK(margin_down > 0);
  CHECK(margin_down <= margin_up);
  CHECK_FALSE(cert.margin.lo() < Interval::from(margin_down, 256).lo());
  BigRational omega_up = parse_rational(value_of(fields, "omega.up"));
  CHECK(mpfr_cmp_q(cert.omega.hi().get(), omega_up.get_mpq_t()) <= 0);
  for (const auto& [key, value] : fields) {
    bool directed = key.ends_with(".up") || key.ends_with(".down");
    if (directed) CHECK_NOTHROW(parse_rational(value));
  }
}

TEST_CASE("JSON report carries the same fields") {
  ZetaConstants c = ZetaConstants::defaults();
  Certificate cert = certify(row("46").inputs(), c);
  std::string line = to_json_line(cert, c);
  CHECK(line.find('\n') == std::string::npos);
  nlohmann::json j = nlohmann::json::parse(line);
  ReportFields fields = report_fields(cert, c);
  CHECK(j.size() == fields.size());
  for (const auto& [key, value] : fields) CHECK(j.at(key).get<std::string>() == value);

  ParsedReport parsed = parse_report(line);
  CHECK(parsed.inputs.x0.text == "e46");
  CHECK(parsed.verdict == Verdict::PASS);
  CHECK(verify_report(parsed).matches());
}

TEST_CASE("a tampered verdict is caught") {
  ZetaConstants c = ZetaConstants::defaults();
  CertInputs in = row("59").inputs();
  in.a = parse_rational("0.49");
  std::string text = to_key_value(certify(in, c), c);
  ParsedReport honest = parse_report(text);
  CHECK(honest.verdict == Verdict::FAIL);
  CHECK(verify_report(honest).matches());

  ParsedReport forged = parse_report(replace_line(text, "verdict", "PASS"));
  Verification v = verify_report(forged);
  CHECK(v.reported == Verdict::PASS);
  CHECK(v.recomputed == Verdict::FAIL);
  CHECK_FALSE(v.matches());
}

TEST_CASE("custom constants travel with the report") {
  ZetaConstants c = ZetaConstants::trudgian();
  c.q_variant = QVariant::TwoROverT;
  Certificate cert = certify(row("150").inputs(), c);
  ParsedReport parsed = parse_report(to_key_value(cert, c));
  CHECK(parsed.constants.rosser == c.rosser);
  CHECK(parsed.constants.q_variant == QVariant::TwoROverT);
  CHECK(parsed.constants.id == c.id);
  Verification v = verify_report(parsed);
  CHECK(v.recomputed == cert.verdict);
}

TEST_CASE("malformed reports") {
  ZetaConstants c = ZetaConstants::defaults();
  std::string text = to_key_value(certify(row("4e18").inputs(), c), c);
  CHECK_THROWS_AS(parse_report(""), DataError);
  CHECK_THROWS_AS(parse_report("format=primecert-certificate/1\nthis line has no separator\n"), DataError);
  CHECK_THROWS_AS(parse_report(replace_line(text, "format", "other/2")), DataError);
  CHECK_THROWS_AS(parse_report(replace_line(text, "m", "five")), DataError);
  CHECK_THROWS_AS(parse_report(replace_line(text, "verdict", "MAYBE")), DataError);
  CHECK_THROWS_AS(parse_report("{\"format\": 3}"), DataError);
  CHECK_THROWS_AS(parse_report("{not json"), DataError);

  std::string missing = text;
  std::size_t at = missing.find("\nT1=");
  missing.erase(at, missing.find('\n', at + 1) - at);
  CHECK_THROWS_AS(parse_report(missing), DataError);

  try {
    parse_report("format=primecert-certificate/1\nverdict=PASS\nbroken\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 3);
  }
}
