#pragma once

// Reference values computed without the library: multiprecision floats,
// polynomial derivatives taken term by term from the binomial expansion of
// (4t(1-t))^m, and adaptive Gauss-Kronrod quadrature between numerically
// located sign changes.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <vector>

namespace oracle {

using Float = boost::multiprecision::cpp_bin_float_100;
using Float50 = boost::multiprecision::cpp_bin_float_50;

// Coefficients (lowest degree first) of the k-th derivative of (4t(1-t))^m.
std::vector<Float> weight_derivative_coefficients(int m, int k);

Float horner(const std::vector<Float>& c, const Float& t);

// Zeros of the polynomial in (0, 1), located on a uniform grid and refined by
// bisection; exact grid hits are kept as they are.
std::vector<Float> zeros_in_unit_interval(const std::vector<Float>& c, int grid = 20000);

// int_0^1 g(t) dt split at the given points.
template <class G>
Float integrate_pieces(G&& g, const std::vector<Float>& cuts) {
  std::vector<Float> points{Float(0)};
  points.insert(points.end(), cuts.begin(), cuts.end());
  points.push_back(Float(1));
  Float total = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] <= points[i]) continue;
    total += boost::math::quadrature::gauss_kronrod<Float, 31>::integrate(g, points[i], points[i + 1], 12,
                                                                          Float("1e-35"));
  }
  return total;
}

// ||f_m||_1 by quadrature.
Float norm1(int m);
// int_0^1 (f_m^{(m)})^2 by quadrature.
Float norm2_squared(int m);
// int_0^1 (1 + delta t)^{k+1} |f_m^{(k)}(t)| dt / ||f_m||_1 by quadrature.
Float F(int k, int m, const Float& delta);

}  // namespace oracle
