#include "lattice/stats.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "lattice/kernels.hpp"
#include "lattice/rng.hpp"

namespace lattice::stats {

double sum(std::span<const double> x) {
  return kernels().sum_pairwise(x.data(), x.size());
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return sum(x) / static_cast<double>(x.size());
}

MeanErr mean_stderr(std::span<const double> x) {
  MeanErr r;
  r.n = x.size();
  if (x.empty()) return r;
  r.value = mean(x);
  if (x.size() < 2) return r;
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - r.value;
    sq[i] = d * d;
  }
  const double var = sum(sq) / static_cast<double>(x.size() - 1);
  r.stderr_ = std::sqrt(var / static_cast<double>(x.size()));
  return r;
}

double bootstrap_stderr(std::span<const double> x, int resamples,
                        std::uint64_t seed) {
  if (x.size() < 2 || resamples < 2) return 0.0;
  Rng rng(seed, 0, Stream::Bootstrap);
  std::vector<double> means(resamples);
  std::vector<double> buf(x.size());
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < x.size(); ++i)
      buf[i] = x[rng.below(x.size())];
    means[b] = mean(buf);
  }
  const double m = mean(means);
  double acc = 0.0;
  for (double v : means) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(resamples - 1));
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

double digamma_int(std::size_t n) {
  if (n == 0) throw std::invalid_argument("digamma_int: n must be >= 1");
  constexpr double kEulerGamma = 0.57721566490153286060651209;
  static std::vector<double> cache{0.0};  // cache[k] = H_k
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() < n) {
    const double k = static_cast<double>(cache.size());
    cache.push_back(cache.back() + 1.0 / k);
  }
  return -kEulerGamma + cache[n - 1];
}

double unit_ball_volume(int d) {
  const double hd = 0.5 * static_cast<double>(d);
  return std::exp(hd * std::log(M_PI) - std::lgamma(hd + 1.0));
}

Quadrature gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
    q.nodes[i] = mid - halfw * x;
    q.nodes[n - 1 - i] = mid + halfw * x;
    q.weights[i] = halfw * w;
    q.weights[n - 1 - i] = halfw * w;
  }
  return q;
}

Quadrature periodic_trapezoid(int n, double period) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.assign(n, period / n);
  for (int i = 0; i < n; ++i) q.nodes[i] = period * i / n;
  return q;
}

}  // namespace lattice::stats
