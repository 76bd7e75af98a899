#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "primecert/certifier.hpp"
#include "primecert/errors.hpp"
#include "primecert/optimizer.hpp"

using namespace primecert;
using oracle::Float50;

namespace {

Float50 to_f50(const BigRational& q) { return Float50(q.get_num().get_str()) / Float50(q.get_den().get_str()); }

Float50 to_f50(const Real& r) {
  char* text = nullptr;
  mpfr_asprintf(&text, "%.55Re", r.get());
  Float50 out(text);
  mpfr_free_str(text);
  return out;
}

const TableRow& row(const std::string& label) {
  for (const TableRow& r : table2_rows())
    if (r.label == label) return r;
  throw std::out_of_range(label);
}

Float50 x0_of(const X0Literal& x) { return x.value ? to_f50(*x.value) : exp(to_f50(*x.exponent)); }

// 100 digits: 1 - r e^{-u} cancels about eight of them.
oracle::Float delta_oracle(const CertInputs& in) {
  auto f = [](const BigRational& q) { return oracle::Float(q.get_num().get_str()) / oracle::Float(q.get_den().get_str()); };
  oracle::Float d = f(in.delta), a = f(in.a);
  oracle::Float u = d / in.m;
  return 1 / (1 - (1 + d * a) / (1 + d * (1 - a)) * exp(-u));
}

ConstraintCode code_of(const CertInputs& in) {
  try {
    certify_once(in, ZetaConstants::defaults(), 192);
  } catch (const ConstraintError& e) {
    return e.code();
  }
  FAIL("no constraint error");
  return ConstraintCode::DOMAIN;
}

bool lessequal(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }

}  // namespace

TEST_CASE("x0 literals") {
  X0Literal e = X0Literal::parse("e59");
  CHECK(e.exponent == 59);
  CHECK_FALSE(e.value);
  CHECK(X0Literal::parse("e43.5").exponent == parse_rational("43.5"));
  X0Literal v = X0Literal::parse("4e18");
  CHECK(v.value == parse_rational("4e18"));
  CHECK(v.log_enclose(128).contains(BigRational(0)) == false);
  CHECK_THROWS_AS(X0Literal::parse("-5"), DataError);
  CHECK_THROWS_AS(X0Literal::parse("eabc"), DataError);
}

TEST_CASE("Delta agrees with a 50-digit evaluation of its closed form") {
  for (const TableRow& r : table2_rows()) {
    CAPTURE(r.label);
    CertParams params = derive_params(r.inputs(), 192);
    Float50 expected(delta_oracle(r.inputs()));
    CHECK(to_f50(params.Delta.lo()) <= expected * (1 + Float50("1e-45")));
    CHECK(expected <= to_f50(params.Delta.hi()) * (1 + Float50("1e-45")));
    CHECK(to_f50(params.Delta.hi()) / to_f50(params.Delta.lo()) - 1 < Float50("1e-40"));
    CHECK(params.u == r.inputs().delta / r.m);
  }
}

TEST_CASE("Delta reproduces the published spot values") {
  CHECK(std::abs(derive_params(row("4e18").inputs()).Delta.mid() / 36082898 - 1) < 1e-3);
  CHECK(std::abs(derive_params(row("59").inputs()).Delta.mid() / 1946282821 - 1) < 1e-3);
  CHECK(std::abs(derive_params(row("150").inputs()).Delta.mid() / 2442159714 - 1) < 1e-3);
  CHECK(std::abs(derive_params(row("4e18").inputs()).Delta.mid() / 3.608e7 - 1) < 1e-3);
  CHECK(std::abs(derive_params(row("59").inputs()).Delta.mid() / 1.9458e9 - 1) < 1e-4);
  CHECK(floor_Delta(derive_params(row("59").inputs())) ==
        BigInt(static_cast<long>(std::floor(derive_params(row("59").inputs()).Delta.lo().to_double(MPFR_RNDD)))));
}

TEST_CASE("Delta matches every table row to within 1e-3") {
  for (const TableRow& r : table2_rows()) {
    CAPTURE(r.label);
    double gap = derive_params(r.inputs()).Delta.mid() / static_cast<double>(r.Delta) - 1;
    CAPTURE(gap);
    CHECK(std::abs(gap) < 1e-3);
  }
}

TEST_CASE("y identity: X0 (1 + delta a) = x0 (1 - 1/Delta)") {
  for (const TableRow& r : table2_rows()) {
    for (Precision p : {128, 192, 300}) {
      CAPTURE(r.label);
      CAPTURE(p);
      CertParams params = derive_params(r.inputs(), p);
      Interval y_left = params.X0 * (1 + r.inputs().delta * r.inputs().a);
      Interval y_right = params.x0 * (Interval::point(1, p) - Interval::point(1, p) / params.Delta);
      Interval gap = abs(y_left - y_right) / params.x0;
      CHECK(gap.hi().to_double() < std::ldexp(1.0, -static_cast<int>(p - 10)));
      Float50 X0 = x0_of(r.inputs().x0) * exp(-to_f50(params.u)) /
                   (1 + to_f50(r.inputs().delta) * (1 - to_f50(r.inputs().a)));
      CHECK(abs(to_f50(params.X0.lo()) / X0 - 1) < Float50("1e-30"));
    }
  }
}

TEST_CASE("parameter errors are named") {
  CertInputs base = row("59").inputs();
  auto with = [&](auto change) {
    CertInputs in = base;
    change(in);
    return code_of(in);
  };
  CHECK(with([](CertInputs& in) { in.delta = 0; }) == ConstraintCode::DELTA_RANGE);
  CHECK(with([](CertInputs& in) { in.delta = parse_rational("2e-4"); }) == ConstraintCode::DELTA_RANGE);
  CHECK(with([](CertInputs& in) { in.m = 1; }) == ConstraintCode::M_RANGE);
  CHECK(with([](CertInputs& in) { in.a = parse_rational("0.51"); }) == ConstraintCode::A_RANGE);
  CHECK(with([](CertInputs& in) { in.a = parse_rational("-0.01"); }) == ConstraintCode::A_RANGE);
  CHECK(with([](CertInputs& in) { in.x0 = X0Literal::parse("1e10"); }) == ConstraintCode::X0_FLOOR);
  CHECK(with([](CertInputs& in) { in.T1 = BigRational(1000); }) == ConstraintCode::T1_RANGE);
  CHECK(with([](CertInputs& in) { in.T1 = parse_rational("4e10"); }) == ConstraintCode::T1_RANGE);
  CHECK(with([](CertInputs& in) { in.sigma0 = parse_rational("0.925"); }) == ConstraintCode::SIGMA0_ROW);
  CHECK(with([](CertInputs& in) {
          in.x0 = X0Literal::parse("e40");
          in.delta = parse_rational("1e-20");
          in.m = 64;
        }) == ConstraintCode::LOG_RATIO);
  CHECK_THROWS_AS(derive_params(base, 16), PrecisionError);
}

TEST_CASE("omega") {
  Interval omega = compute_omega();
  CHECK(to_f50(omega.lo()) > Float50("2.0501e-3"));
  CHECK(to_f50(omega.hi()) <= Float50("2.05022e-3"));

  Float50 u("1e-4"), d("1e-4");
  Float50 expected = sqrt(1 + d) * (Float50("1.001") * exp(u / 2) - Float50("0.999") +
                                    exp(Float50(-38) / 6) * pow(1 + d, Float50(-1) / 6) * expm1(u / 3));
  CHECK(to_f50(omega.lo()) <= expected * (1 + Float50("1e-45")));
  CHECK(expected <= to_f50(omega.hi()) * (1 + Float50("1e-45")));

  Float50 cube = exp(Float50(-38) / 6) * expm1(u / 3);
  CHECK(cube < Float50("1e-7"));

  BigRational tiny(1, BigInt("1000000000000000000000000000000"));
  Interval limit = compute_omega(tiny, tiny, 38, 192);
  CHECK(std::abs(limit.mid() - 2e-3) < 1e-12);
  CHECK(compute_omega(BigRational(1, 10000), BigRational(1, 10000), 60, 192).certainly_less(omega));
}

TEST_CASE("Brun-Titchmarsh term") {
  CertInputs in = row("59").inputs();
  CertParams params = derive_params(in, 192);
  Interval ratio = bt_log_ratio(params);
  CHECK(std::abs(ratio.mid() - 1.65) < 0.01);
  Float50 u = to_f50(params.u);
  Float50 logX0 = to_f50(params.log_X0.lo());
  Float50 expected = (u + logX0 + log1p(to_f50(in.delta))) / (logX0 + log(expm1(u)));
  CHECK(abs(to_f50(ratio.lo()) / expected - 1) < Float50("1e-30"));

  WeightCore core = make_weight_core(in.m, in.delta, 192);
  CHECK(bt_term(params, make_weight_profile(core, 0)).hi().is_zero());
  Interval half = bt_term(params, make_weight_profile(core, BigRational(1, 2)));
  CHECK(std::abs(half.mid() / ratio.mid() - 2 * (1 + 4.589e-9)) < 1e-12);
  CHECK(half.lo().to_double() > 1);
}

TEST_CASE("certificates for the table rows") {
  ZetaConstants c = ZetaConstants::defaults();
  for (const char* label : {"4e18", "46", "59", "150"}) {
    CAPTURE(label);
    Certificate cert = certify(row(label).inputs(), c);
    CHECK(cert.verdict == Verdict::PASS);
    CHECK(cert.margin.certainly_positive());
    CHECK(cert.precision_used == 192);
    CHECK(cert.retries == 0);
    CHECK(cert.constants_id == "rosser");
    CHECK(cert.positive_term.contains(*make_weight_core(cert.params.m(), cert.params.delta(), 192).F0.exact));
    for (const Interval* v : {&cert.omega, &cert.bt_term, &cert.psi_tail_term, &cert.omega_term}) {
      CHECK(v->certainly_nonnegative());
    }
    Interval rebuilt = cert.positive_term - cert.breakdown.total_with_X0_powers - cert.psi_tail_term -
                       cert.omega_term - cert.bt_term;
    CHECK(rebuilt.lo() == cert.margin.lo());
  }
}

TEST_CASE("perturbing a toward 1/2 fails the row log x0 = 59") {
  CertInputs in = row("59").inputs();
  in.a = parse_rational("0.49");
  Certificate cert = certify(in, ZetaConstants::defaults());
  CHECK(cert.verdict == Verdict::FAIL);
  CHECK(cert.margin.certainly_negative());
}

TEST_CASE("margin grows with X0") {
  ZetaConstants c = ZetaConstants::defaults();
  CertInputs in = row("59").inputs();
  Certificate base = certify(in, c);
  in.x0 = X0Literal::parse("e59.693147180559945");
  Certificate doubled = certify(in, c);
  CHECK(doubled.verdict == Verdict::PASS);
  CHECK(lessequal(base.margin.lo(), doubled.margin.lo()));
}

TEST_CASE("higher precision never loses a PASS and tightens the margin") {
  ZetaConstants c = ZetaConstants::defaults();
  for (const char* label : {"4e18", "59", "150"}) {
    CAPTURE(label);
    Certificate previous = certify_once(row(label).inputs(), c, 96);
    for (Precision p : {192, 384, 768}) {
      Certificate current = certify_once(row(label).inputs(), c, p);
      if (previous.verdict == Verdict::PASS) CHECK(current.verdict == Verdict::PASS);
      CHECK(lessequal(previous.margin.lo(), current.margin.lo()));
      previous = std::move(current);
    }
  }
}

TEST_CASE("certify_once with a prepared weight core") {
  ZetaConstants c = ZetaConstants::defaults();
  CertInputs in = row("46").inputs();
  WeightCore core = make_weight_core(in.m, in.delta, 192);
  Certificate a = certify_once(in, core, c);
  Certificate b = certify_once(in, c, 192);
  CHECK(a.margin.lo() == b.margin.lo());
  CHECK(a.margin.hi() == b.margin.hi());
  CertInputs other = in;
  other.m += 1;
  CHECK_THROWS_AS(certify_once(other, core, c), std::invalid_argument);
}

TEST_CASE("verdict names") {
  for (Verdict v : {Verdict::PASS, Verdict::FAIL, Verdict::UNKNOWN}) CHECK(parse_verdict(to_string(v)) == v);
  CHECK_THROWS_AS(parse_verdict("MAYBE"), DataError);
}

TEST_CASE("the q definition barely moves the margins") {
  ZetaConstants rlog = ZetaConstants::defaults();
  ZetaConstants alt = rlog;
  alt.q_variant = QVariant::TwoROverT;
  for (const TableRow& r : table2_rows()) {
    CAPTURE(r.label);
    double a = certify(r.inputs(), rlog).margin.mid();
    double b = certify(r.inputs(), alt).margin.mid();
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::abs(a - b) / std::abs(a) < 1e-6);
  }
}
