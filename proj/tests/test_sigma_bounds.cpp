#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "primecert/certifier.hpp"
#include "primecert/errors.hpp"
#include "primecert/optimizer.hpp"
#include "primecert/sigma_bounds.hpp"
#include "primecert/zero_sums.hpp"

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

bool lessequal(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }

const TableRow& row(const std::string& label) {
  for (const TableRow& r : table2_rows())
    if (r.label == label) return r;
  throw std::out_of_range(label);
}

std::vector<const Interval*> fields(const SigmaBreakdown& s) {
  return {&s.Sigma01, &s.Sigma02, &s.Sigma11, &s.Sigma12, &s.B0, &s.B1, &s.B2, &s.B3_at_sigma0,
          &s.B3_at_one_minus_sigma0, &s.B41, &s.B42, &s.total_with_X0_powers};
}

}  // namespace

TEST_CASE("prefactor identity 2(e^(u/2) - 1)/(e^u - 1) = 2/(e^(u/2) + 1)") {
  for (int k = 4; k <= 30; ++k) {
    Float50 u = pow(Float50(10), -k);
    Float50 lhs = 2 * expm1(u / 2) / expm1(u);
    Float50 rhs = 2 / (exp(u / 2) + 1);
    CHECK(abs(lhs - rhs) < Float50("1e-45"));
  }
  // The limit of the Sigma0 prefactor 4/(e^(u/2)+1) as u -> 0.
  ZetaConstants c = ZetaConstants::defaults();
  WeightCore w = make_weight_core(5, parse_rational("1e-25"), 192);
  Sigma0Bounds s = sigma0_bounds(w, c);
  Float50 prefactor = to_f50(s.Sigma02.hi()) / (to_f50(w.F0.value.hi()) * to_f50(BigRational(c.N0)));
  CHECK(abs(prefactor - 2) < Float50("1e-24"));
}

TEST_CASE("Sigma0 bounds at m = 5 match their formulas and the count form wins") {
  ZetaConstants c = ZetaConstants::defaults();
  BigRational delta = parse_rational("3.580e-8");
  WeightCore w = make_weight_core(5, delta, 192);
  Sigma0Bounds s = sigma0_bounds(w, c);
  Float50 d = to_f50(delta);
  Float50 half = exp(d / 10) + 1;
  Float50 f0 = to_f50(*w.F0.exact), f1 = to_f50(*w.F1.exact);
  Float50 s01 = 4 * f1 / (half * d) * to_f50(c.S0);
  Float50 s02 = 4 * f0 / half * to_f50(BigRational(c.N0));
  CHECK(to_f50(s.Sigma01.lo()) <= s01 * (1 + Float50("1e-40")));
  CHECK(s01 <= to_f50(s.Sigma01.hi()) * (1 + Float50("1e-40")));
  CHECK(to_f50(s.Sigma02.lo()) <= s02 * (1 + Float50("1e-40")));
  CHECK(s02 <= to_f50(s.Sigma02.hi()) * (1 + Float50("1e-40")));
  Float50 ratio = s02 / s01;
  CHECK(ratio < Float50("0.01"));
  CHECK(abs(ratio / (f0 * to_f50(BigRational(c.N0)) * d / (f1 * to_f50(c.S0))) - 1) < Float50("1e-40"));
}

TEST_CASE("Sigma1 bounds") {
  ZetaConstants c = ZetaConstants::defaults();
  WeightCore w = make_weight_core(5, parse_rational("3.580e-8"), 192);
  Sigma1Bounds at_t0 = sigma1_bounds(w, c.T0, c);
  auto [lo, hi] = N_bounds(c.T0, c);
  BigInt extra = hi - c.N0;
  CHECK(extra >= 0);
  CHECK(extra <= 10);
  Float50 r_t0 = to_f50(R(Interval::from(c.T0, 192), c).hi());
  CHECK(Float50(extra.get_str()) <= 2 * r_t0 + 1);
  Interval per_zero = at_t0.Sigma12 / Interval::from(extra, 192);
  CHECK(std::abs(per_zero.mid() - 2 * w.F0.value.mid()) < 1e-6);

  Sigma1Bounds at_1e9 = sigma1_bounds(w, BigRational(1000000000), c);
  CHECK(at_1e9.Sigma11.certainly_positive());
  CHECK(std::isfinite(at_1e9.Sigma11.hi().to_double()));
  CHECK(at_1e9.Sigma12.certainly_positive());
}

TEST_CASE("B3 increases with sigma") {
  ZetaConstants c = ZetaConstants::defaults();
  WeightCore w = make_weight_core(61, parse_rational("4.589e-9"), 192);
  Interval previous = B3(w, Interval::from(BigRational(0), 192), c);
  for (int i = 1; i <= 20; ++i) {
    Interval current = B3(w, Interval::from(BigRational(i, 20), 192), c);
    CHECK(previous.certainly_less(current));
    previous = current;
  }
}

TEST_CASE("breakdown at the row log x0 = 59") {
  ZetaConstants c = ZetaConstants::defaults();
  CertInputs in = row("59").inputs();
  CertParams params = derive_params(in, 192);
  WeightCore w = make_weight_core(in.m, in.delta, 192);
  SigmaBreakdown s = B_terms(params, w, c);

  for (const Interval* v : fields(s)) CHECK(v->certainly_nonnegative());
  CHECK(s.B0.hi() == min(s.Sigma01, s.Sigma02).hi());
  CHECK(s.B1.hi() == min(s.Sigma11, s.Sigma12).hi());
  CHECK(s.B0_uses_count);
  CHECK(lessequal(s.B0.hi(), s.Sigma01.hi()));
  CHECK(lessequal(s.B0.hi(), s.Sigma02.hi()));
  CHECK(lessequal(s.B1.hi(), s.Sigma11.hi()));
  CHECK(lessequal(s.B1.hi(), s.Sigma12.hi()));

  WeightProfile prof = make_weight_profile(w, in.a);
  Interval budget = w.F0.value - bt_term(params, prof);
  CHECK(s.total_with_X0_powers.certainly_less(budget));

  // The large magnitudes cancel without overflow.
  Interval scale = w.Fmm.value / Interval::from(pow(in.delta, in.m), 192);
  double log10_scale = (log(scale) / log(Interval::point(10, 192))).hi().to_double();
  CHECK(std::isfinite(log10_scale));
  CHECK(log10_scale > 100);
  Interval tail = s.B2 * exp(params.log_X0 / BigRational(-2));
  CHECK(std::isfinite(s.B2.hi().to_double()));
  CHECK(tail.hi().to_double() < 1e-3);
}

TEST_CASE("the assembled total shrinks as X0 grows") {
  ZetaConstants c = ZetaConstants::defaults();
  for (const char* label : {"4e18", "46", "59", "150"}) {
    CAPTURE(label);
    CertInputs in = row(label).inputs();
    CertParams base = derive_params(in, 192);
    CertInputs doubled_in = in;
    if (in.x0.value) {
      doubled_in.x0 = X0Literal::parse(format_rational(*in.x0.value * 2));
    } else {
      doubled_in.x0.exponent = *in.x0.exponent + BigRational(693147, 1000000);
    }
    CertParams doubled = derive_params(doubled_in, 192);
    WeightCore w = make_weight_core(in.m, in.delta, 192);
    SigmaBreakdown a = B_terms(base, w, c);
    SigmaBreakdown b = B_terms(doubled, w, c);
    CHECK(b.total_with_X0_powers.certainly_less(a.total_with_X0_powers));
    CHECK(lessequal(b.B42.hi(), a.B42.hi()));
    CHECK(lessequal(a.B42.hi(), b.B42.hi()));
  }
}

TEST_CASE("count forms are the minima over the small-delta box") {
  ZetaConstants c = ZetaConstants::defaults();
  std::mt19937_64 rng(20240517);
  std::uniform_int_distribution<int> m_dist(5, 64);
  std::uniform_real_distribution<double> log_delta(std::log(1e-10), std::log(2e-8));
  std::uniform_real_distribution<double> height(1e9, 3.061e10);
  int count0 = 0, count1 = 0;
  const int samples = 40;
  for (int i = 0; i < samples; ++i) {
    int m = m_dist(rng);
    BigRational delta(std::exp(log_delta(rng)));
    BigRational T1(std::floor(height(rng)));
    WeightCore w = make_weight_core(m, delta, 192);
    Sigma0Bounds s0 = sigma0_bounds(w, c);
    Sigma1Bounds s1 = sigma1_bounds(w, T1, c);
    count0 += lessequal(s0.Sigma02.hi(), s0.Sigma01.hi());
    count1 += lessequal(s1.Sigma12.hi(), s1.Sigma11.hi());
  }
  CHECK(count0 == samples);
  CHECK(count1 == samples);
}
