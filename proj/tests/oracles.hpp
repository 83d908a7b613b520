// Test-only oracles, independent of the library's evaluation paths:
// numerical differentiation and brute-force reference implementations.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// Central finite difference of a scalar function of n variables.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double eps = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + eps;
    const double fp = f(x);
    x[i] = x0 - eps;
    const double fm = f(x);
    x[i] = x0;
    g[i] = (fp - fm) / (2 * eps);
  }
  return g;
}

// Central finite-difference Jacobian of a map R^n -> R^n.
inline std::vector<std::vector<double>> fd_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    std::vector<double> x, double eps = 1e-6) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> j(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    const double x0 = x[c];
    x[c] = x0 + eps;
    const auto fp = f(x);
    x[c] = x0 - eps;
    const auto fm = f(x);
    x[c] = x0;
    for (std::size_t r = 0; r < n; ++r) j[r][c] = (fp[r] - fm[r]) / (2 * eps);
  }
  return j;
}

// Brute-force k-th nearest neighbor distance (L2), excluding the point itself.
inline double knn_distance_brute(const std::vector<double>& pts, std::size_t n,
                                 std::size_t dim, std::size_t query, int k) {
  std::vector<double> d2;
  d2.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == query) continue;
    double acc = 0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = pts[j * dim + c] - pts[query * dim + c];
      acc += diff * diff;
    }
    d2.push_back(acc);
  }
  std::nth_element(d2.begin(), d2.begin() + (k - 1), d2.end());
  return std::sqrt(d2[k - 1]);
}

}  // namespace oracles
