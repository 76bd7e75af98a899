#include "oracle.hpp"

namespace oracle {

std::vector<Float> weight_derivative_coefficients(int m, int k) {
  // (4t(1-t))^m = 4^m sum_j C(m, j) (-1)^j t^{m+j}
  std::vector<Float> c(2 * m + 1, Float(0));
  Float four_m = pow(Float(4), m);
  Float binom = 1;
  for (int j = 0; j <= m; ++j) {
    c[m + j] = four_m * binom * ((j % 2) ? -1 : 1);
    binom = binom * (m - j) / (j + 1);
  }
  for (int step = 0; step < k; ++step) {
    std::vector<Float> d(c.size() > 1 ? c.size() - 1 : 1, Float(0));
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long>(i);
    c = std::move(d);
  }
  return c;
}

Float horner(const std::vector<Float>& c, const Float& t) {
  Float acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<Float> zeros_in_unit_interval(const std::vector<Float>& c, int grid) {
  std::vector<Float> out;
  Float prev_t = 0;
  Float prev = horner(c, prev_t);
  for (int i = 1; i < grid; ++i) {
    Float t = Float(i) / grid;
    Float v = horner(c, t);
    if (v == 0) {
      out.push_back(t);
    } else if (prev != 0 && (prev < 0) != (v < 0)) {
      Float lo = prev_t, hi = t;
      bool lo_negative = prev < 0;
      for (int it = 0; it < 330; ++it) {
        Float mid = (lo + hi) / 2;
        Float fm = horner(c, mid);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == lo_negative) lo = mid;
        else hi = mid;
      }
      out.push_back((lo + hi) / 2);
    }
    prev_t = t;
    prev = v;
  }
  return out;
}

Float norm1(int m) {
  return integrate_pieces([&](const Float& t) { return pow(4 * t * (1 - t), m); }, {Float("0.5")});
}

Float norm2_squared(int m) {
  auto g = weight_derivative_coefficients(m, m);
  return integrate_pieces(
      [&](const Float& t) {
        Float v = horner(g, t);
        return v * v;
      },
      zeros_in_unit_interval(g));
}

Float F(int k, int m, const Float& delta) {
  const std::vector<Float> half{Float("0.5")};
  Float integral;
  if (k == 0) {
    integral = integrate_pieces([&](const Float& t) { return (1 + delta * t) * pow(4 * t * (1 - t), m); }, half);
  } else if (k == 1) {
    // f' = 4^m m (t(1-t))^{m-1} (1-2t); the factored form avoids the
    // cancellation of the expanded polynomial near the endpoints.
    Float scale = pow(Float(4), m) * m;
    integral = integrate_pieces(
        [&](const Float& t) { return pow(1 + delta * t, 2) * scale * pow(t * (1 - t), m - 1) * abs(1 - 2 * t); },
        half);
  } else {
    auto g = weight_derivative_coefficients(m, k);
    integral = integrate_pieces([&](const Float& t) { return pow(1 + delta * t, k + 1) * abs(horner(g, t)); },
                                zeros_in_unit_interval(g));
  }
  return integral / norm1(m);
}

}  // namespace oracle
