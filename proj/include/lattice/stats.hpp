// Estimator helpers: deterministic reductions, bootstrap error bars, a
// two-sample Kolmogorov-Smirnov test, and small special-function utilities.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lattice::stats {

// Deterministic pairwise sum / mean (same tree on every kernel variant).
double sum(std::span<const double> x);
double mean(std::span<const double> x);

struct MeanErr {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

// Mean with the usual sd/sqrt(n) error bar.
MeanErr mean_stderr(std::span<const double> x);

// Bootstrap standard error of the mean of x (B resamples).
double bootstrap_stderr(std::span<const double> x, int resamples,
                        std::uint64_t seed);

// Two-sample Kolmogorov-Smirnov statistic and the alpha-level critical value
// for sample sizes n and m.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_critical(std::size_t n, std::size_t m, double alpha);

// digamma(n) for integer n >= 1 (harmonic-number form, cached).
double digamma_int(std::size_t n);

// Volume of the unit L2 ball in d dimensions.
double unit_ball_volume(int d);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b].
Quadrature gauss_legendre(int n, double a, double b);
// Periodic trapezoid rule on [0, period).
Quadrature periodic_trapezoid(int n, double period);

}  // namespace lattice::stats
