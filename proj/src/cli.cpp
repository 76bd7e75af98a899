#include "primecert/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "primecert/errors.hpp"
#include "primecert/gapscan.hpp"
#include "primecert/optimizer.hpp"
#include "primecert/report.hpp"

namespace primecert::cli {

namespace {

constexpr const char* kX0Help =
    "x0 as a decimal (1e19, 4000000000000000000, 7/2) or as eN meaning exp(N) (e59, e43.5)";

constexpr const char* kCsvHeader = "log_x0,m,delta,T1,sigma0,a,Delta,margin,verdict";
constexpr const char* kCsvNote = "# log_x0, Delta and margin are rounded down";

enum class Output { Text, Csv, Json };

struct Config {
  Precision precision = kDefaultPrecision;
  std::string constants_file;
  std::string zeros_file;
  std::string q_variant;
  bool trudgian = false;
  Output output = Output::Text;
  std::string verify_report;
  unsigned threads = 0;
};

std::string down(const Interval& x, int digits = 12) { return x.down().to_string(digits); }

std::string csv_row(const Certificate& cert) {
  const CertParams& prm = cert.params;
  std::ostringstream row;
  row << down(prm.log_x0) << ',' << prm.inputs.m << ',' << format_rational(prm.inputs.delta) << ','
      << format_rational(prm.inputs.T1) << ',' << format_rational(prm.inputs.sigma0) << ','
      << format_rational(prm.inputs.a) << ',' << floor_Delta(prm).get_str() << ',' << down(cert.margin, 10) << ','
      << to_string(cert.verdict);
  return row.str();
}

int verdict_exit(Verdict v) { return v == Verdict::PASS ? kExitSuccess : kExitFailed; }

ZetaConstants load_config_constants(const Config& cfg) {
  ZetaConstants c = cfg.trudgian ? ZetaConstants::trudgian() : ZetaConstants::defaults();
  if (!cfg.constants_file.empty()) c = load_constants(cfg.constants_file, c);
  if (!cfg.q_variant.empty()) c.q_variant = parse_q_variant(cfg.q_variant);
  c.validate();
  return c;
}

std::optional<Precision> env_precision() {
  const char* text = std::getenv("PRIMECERT_PRECISION");
  if (text == nullptr || *text == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    long value = std::stol(text, &used);
    if (used != std::string(text).size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::logic_error&) {
    throw DataError(std::string("PRIMECERT_PRECISION is not an integer: '") + text + "'");
  }
}

// ---- subcommands ------------------------------------------------------------

struct CertifyArgs {
  std::string x0, m, delta, a, t1, sigma0;
};

int do_certify(const Config& cfg, const CertifyArgs& args, std::ostream& out) {
  ZetaConstants c = load_config_constants(cfg);
  if (!cfg.zeros_file.empty()) validate_against_zeros(c, load_zeros(cfg.zeros_file));
  BigRational m = parse_rational(args.m);
  if (m.get_den() != 1 || !m.get_num().fits_sint_p()) throw DataError("m must be an integer: '" + args.m + "'");
  CertInputs inputs{X0Literal::parse(args.x0),     static_cast<int>(m.get_num().get_si()), parse_rational(args.delta),
                    parse_rational(args.a),        parse_rational(args.t1),                 parse_rational(args.sigma0)};
  Certificate cert = certify(inputs, c, cfg.precision);
  switch (cfg.output) {
    case Output::Text: out << to_key_value(cert, c); break;
    case Output::Json: out << to_json_line(cert, c) << '\n'; break;
    case Output::Csv: out << kCsvNote << '\n' << kCsvHeader << '\n' << csv_row(cert) << '\n'; break;
  }
  return verdict_exit(cert.verdict);
}

int do_optimize(const Config& cfg, SearchSpec spec, const std::string& spec_file, const std::string& x0,
                std::ostream& out) {
  ZetaConstants c = load_config_constants(cfg);
  SearchSpec merged = spec;
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in) throw DataError("cannot open search spec '" + spec_file + "'");
    merged = parse_search_spec(in, spec);
  }
  if (!x0.empty()) merged.x0 = X0Literal::parse(x0);
  if (merged.x0.text.empty()) throw DataError("optimize needs --x0 or an x0 line in --spec");
  merged.precision = cfg.precision;
  merged.threads = cfg.threads;
  merged.validate(c);

  SearchResult result = optimize(merged, c);
  switch (cfg.output) {
    case Output::Json:
      if (result.best) out << to_json_line(*result.best, c) << '\n';
      break;
    case Output::Csv:
      out << kCsvNote << '\n' << kCsvHeader << '\n';
      if (result.best) out << csv_row(*result.best) << '\n';
      break;
    case Output::Text: {
      out << "status              " << to_string(result.status) << '\n'
          << "certificates_used   " << result.certificates_used << '\n';
      if (result.best) {
        const Certificate& b = *result.best;
        out << "m                   " << b.params.inputs.m << '\n'
            << "delta               " << format_rational(b.params.inputs.delta) << '\n'
            << "a                   " << format_rational(b.params.inputs.a) << '\n'
            << "T1                  " << format_rational(b.params.inputs.T1) << '\n'
            << "sigma0              " << format_rational(b.params.inputs.sigma0) << '\n'
            << "Delta (down)        " << floor_Delta(b.params) << '\n'
            << "margin (down)       " << down(b.margin, 10) << '\n'
            << "verdict             " << to_string(b.verdict) << '\n';
        std::string rows;
        for (const auto& r : result.dominated_rows) rows += (rows.empty() ? "" : ",") + r;
        out << "dominated_rows      " << (rows.empty() ? "-" : rows) << '\n';
      }
      break;
    }
  }
  return result.status == SearchStatus::OK ? kExitSuccess : kExitFailed;
}

int do_table(const Config& cfg, const std::vector<std::string>& labels, std::ostream& out) {
  ZetaConstants c = load_config_constants(cfg);
  std::vector<RowCheck> rows = reproduce_table(labels, c, cfg.precision, cfg.threads);
  bool all_pass = std::all_of(rows.begin(), rows.end(), [](const RowCheck& r) { return r.cert.verdict == Verdict::PASS; });
  switch (cfg.output) {
    case Output::Json:
      for (const auto& r : rows) out << to_json_line(r.cert, c) << '\n';
      break;
    case Output::Csv:
      out << kCsvNote << '\n' << kCsvHeader << '\n';
      for (const auto& r : rows) out << csv_row(r.cert) << '\n';
      break;
    case Output::Text: {
      out << std::left << std::setw(6) << "row" << std::right << std::setw(4) << "m" << std::setw(12) << "delta"
          << std::setw(13) << "T1" << std::setw(7) << "sigma0" << std::setw(8) << "a" << std::setw(13) << "Delta_table"
          << std::setw(18) << "Delta (down)" << std::setw(12) << "rel_gap" << std::setw(19) << "margin (down)"
          << std::setw(8) << "verdict" << '\n';
      for (const auto& r : rows) {
        std::ostringstream gap;
        gap << std::scientific << std::setprecision(3) << r.relative_gap;
        out << std::left << std::setw(6) << r.row.label << std::right << std::setw(4) << r.row.m << std::setw(12)
            << r.row.delta << std::setw(13) << r.row.T1 << std::setw(7) << r.row.sigma0 << std::setw(8) << r.row.a
            << std::setw(13) << r.row.Delta << std::setw(18) << floor_Delta(r.cert.params).get_str() << std::setw(12)
            << gap.str() << std::setw(19) << down(r.cert.margin, 6) << std::setw(8) << to_string(r.cert.verdict)
            << '\n';
      }
      long passed = std::count_if(rows.begin(), rows.end(), [](const RowCheck& r) { return r.cert.verdict == Verdict::PASS; });
      out << passed << '/' << rows.size() << " PASS\n";
      break;
    }
  }
  return all_pass ? kExitSuccess : kExitFailed;
}

int do_zeros_stats(const Config& cfg, const std::string& T_text, std::ostream& out) {
  if (cfg.zeros_file.empty()) throw DataError("zeros stats needs --zeros-file");
  ZeroList zeros = load_zeros(cfg.zeros_file);
  ZetaConstants c = load_config_constants(cfg);
  BigRational T = T_text.empty() ? BigRational(zeros.max_height()) : parse_rational(T_text);
  ZeroStats stats = zero_stats(zeros, T.get_d(), cfg.precision);
  auto [lower, upper] = N_bounds(T, c, cfg.precision);
  bool inside = lower <= BigInt(stats.count) && BigInt(stats.count) <= upper;
  switch (cfg.output) {
    case Output::Json:
      out << "{\"zeros\":" << zeros.count() << ",\"height\":" << std::setprecision(17) << zeros.max_height()
          << ",\"T\":\"" << format_rational(T) << "\",\"count\":" << stats.count << ",\"inv_sum.up\":\""
          << stats.inv_sum.to_string(17) << "\",\"N_lower\":\"" << lower.get_str() << "\",\"N_upper\":\""
          << upper.get_str() << "\",\"bracketed\":" << (inside ? "true" : "false") << "}\n";
      break;
    case Output::Csv:
      out << "zeros,height,T,count,inv_sum_up,N_lower,N_upper,bracketed\n"
          << zeros.count() << ',' << std::setprecision(17) << zeros.max_height() << ',' << format_rational(T) << ','
          << stats.count << ',' << stats.inv_sum.to_string(17) << ',' << lower << ',' << upper << ','
          << (inside ? "true" : "false") << '\n';
      break;
    case Output::Text:
      out << "zeros in file       " << zeros.count() << '\n'
          << "file height         " << std::setprecision(17) << zeros.max_height() << '\n'
          << "T                   " << format_rational(T) << '\n'
          << "N(T) from file      " << stats.count << '\n'
          << "sum 1/gamma (up)    " << stats.inv_sum.to_string(17) << '\n'
          << "N_bounds(T)         [" << lower << ", " << upper << "]\n"
          << "bracketed           " << (inside ? "yes" : "no") << '\n';
      break;
  }
  return inside ? kExitSuccess : kExitFailed;
}

std::uint64_t parse_u64(const std::string& text) {
  BigRational q = parse_rational(text);
  if (q.get_den() != 1 || q < 0 || !mpz_fits_ulong_p(q.get_num().get_mpz_t())) {
    throw DataError("not a 64-bit unsigned integer: '" + text + "'");
  }
  return q.get_num().get_ui();
}

int do_gapscan(const Config& cfg, const std::string& from, const std::string& to, const std::string& report,
               std::ostream& out) {
  GapReport g = sieve_gaps(parse_u64(from), parse_u64(to), cfg.threads);
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  if (report == "csv" || cfg.output == Output::Csv) {
    out << "lo,hi,prime_count,first_prime,last_prime,max_gap,max_gap_location\n"
        << g.lo << ',' << g.hi << ',' << g.prime_count << ',' << opt(g.first_prime) << ',' << opt(g.last_prime) << ','
        << g.max_gap << ',' << g.max_gap_location << '\n';
  } else {
    out << "range               [" << g.lo << ", " << g.hi << "]\n"
        << "primes              " << g.prime_count << '\n'
        << "first prime         " << opt(g.first_prime) << '\n'
        << "last prime          " << opt(g.last_prime) << '\n'
        << "max gap             " << g.max_gap << '\n'
        << "gap starts at       " << g.max_gap_location << '\n';
  }
  return kExitSuccess;
}

int do_verify_report(const Config& cfg, std::ostream& out) {
  std::ifstream in(cfg.verify_report);
  if (!in) throw DataError("cannot open report '" + cfg.verify_report + "'");
  std::stringstream text;
  text << in.rdbuf();
  std::string content = text.str();
  int status = kExitSuccess;
  std::size_t count = 0;
  auto check = [&](const std::string& record) {
    ParsedReport parsed = parse_report(record);
    Verification v = verify_report(parsed);
    ++count;
    out << "report " << count << ": reported " << to_string(v.reported) << ", recomputed " << to_string(v.recomputed)
        << (v.matches() ? ", match" : ", MISMATCH") << '\n';
    if (!v.matches()) status = kExitFailed;
  };
  auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    std::istringstream lines(content);
    for (std::string line; std::getline(lines, line);) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) check(line);
    }
  } else {
    check(content);
  }
  if (count == 0) throw DataError("report file is empty");
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Certified prime-gap intervals: for all x >= x0 there is a prime in (x (1 - 1/Delta), x)", "primecert"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::optional<Precision> precision_flag;
  std::string output = "text";
  app.add_option("--precision", precision_flag, "working precision in bits (default 192; PRIMECERT_PRECISION is used when this flag is absent)");
  app.add_option("--constants-file", cfg.constants_file, "key=value overrides of the zero constants")->check(CLI::ExistingFile);
  app.add_option("--zeros-file", cfg.zeros_file, "zero ordinates, one per line, ascending, '#' comments")->check(CLI::ExistingFile);
  app.add_option("--q-variant", cfg.q_variant, "q(T) in the zero sums: rlog or 2rt")->check(CLI::IsMember({"rlog", "2rt"}));
  app.add_flag("--trudgian", cfg.trudgian, "use Trudgian's error-term coefficients");
  app.add_option("--output", output, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--verify-report", cfg.verify_report, "re-run every certificate in a report file and compare verdicts")
      ->check(CLI::ExistingFile);
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)");

  CertifyArgs cargs;
  auto* certify_cmd = app.add_subcommand("certify", "evaluate the certificate for one parameter set");
  certify_cmd->add_option("--x0", cargs.x0, kX0Help)->required();
  certify_cmd->add_option("--m", cargs.m, "weight exponent, integer >= 2")->required();
  certify_cmd->add_option("--delta", cargs.delta, "smoothing width in (0, 1e-4]")->required();
  certify_cmd->add_option("--a", cargs.a, "edge cut in [0, 1/2]")->required();
  certify_cmd->add_option("--t1", cargs.t1, "split height T1 in (T0, H]")->required();
  certify_cmd->add_option("--sigma0", cargs.sigma0, "zero-density row")->required();

  SearchSpec spec;
  std::string opt_x0, spec_file, sigma_list;
  auto* optimize_cmd = app.add_subcommand("optimize", "search parameters maximizing the certified Delta");
  optimize_cmd->add_option("--x0", opt_x0, kX0Help);
  optimize_cmd->add_option("--spec", spec_file, "key=value search spec file")->check(CLI::ExistingFile);
  optimize_cmd->add_option("--budget", spec.budget, "maximum certificate evaluations")->capture_default_str();
  optimize_cmd->add_option("--m-min", spec.m_min)->capture_default_str();
  optimize_cmd->add_option("--m-max", spec.m_max)->capture_default_str();
  optimize_cmd->add_option("--sigma0", sigma_list, "comma-separated density rows (default: all)");

  std::vector<std::string> labels;
  auto* table_cmd = app.add_subcommand("table", "re-certify the published parameter table");
  table_cmd->add_option("--rows", labels, "row labels such as 4e18,59,150")->delimiter(',');

  std::string zeros_T;
  auto* zeros_cmd = app.add_subcommand("zeros", "zero-file utilities");
  zeros_cmd->require_subcommand(1);
  auto* stats_cmd = zeros_cmd->add_subcommand("stats", "count and reciprocal sum of ordinates up to T");
  stats_cmd->add_option("--T", zeros_T, "height (default: the file's last ordinate)");

  std::string gap_from, gap_to, gap_report = "text";
  auto* gapscan_cmd = app.add_subcommand("gapscan", "sieve a range and report its largest prime gap");
  gapscan_cmd->add_option("--from", gap_from, "lower end, >= 1")->required();
  gapscan_cmd->add_option("--to", gap_to, "upper end, at most 1e10 above --from")->required();
  gapscan_cmd->add_option("--report", gap_report, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    cfg.precision = precision_flag ? *precision_flag : env_precision().value_or(kDefaultPrecision);
    check_precision(cfg.precision);
    cfg.output = output == "csv" ? Output::Csv : output == "json" ? Output::Json : Output::Text;

    if (!cfg.verify_report.empty()) return do_verify_report(cfg, out);
    if (certify_cmd->parsed()) return do_certify(cfg, cargs, out);
    if (optimize_cmd->parsed()) {
      if (!sigma_list.empty()) {
        std::istringstream items(sigma_list);
        for (std::string item; std::getline(items, item, ',');) spec.sigma0_choices.push_back(parse_rational(item));
      }
      return do_optimize(cfg, spec, spec_file, opt_x0, out);
    }
    if (table_cmd->parsed()) return do_table(cfg, labels, out);
    if (stats_cmd->parsed()) return do_zeros_stats(cfg, zeros_T, out);
    if (gapscan_cmd->parsed()) return do_gapscan(cfg, gap_from, gap_to, gap_report, out);
    err << app.help();
    return kExitUsage;
  } catch (const ConstraintError& e) {
    err << "constraint violated: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace primecert::cli
