// Entropy functionals: closed forms for Gaussian/product states, the
// Kozachenko-Leonenko nearest-neighbor estimator for sampled states, and
// per-volume entropy sequences.
#pragma once

#include <optional>

#include "lattice/energy.hpp"
#include "lattice/ensemble.hpp"
#include "lattice/gaussian.hpp"

namespace lattice {

// Kozachenko-Leonenko with L2 balls:
//   H ~= psi(N) - psi(k) + ln V_d + (d/N) sum_i ln eps_i(k).
// Exact duplicate points make eps = 0; a deterministic seed-derived jitter at
// 1e-12 scale is applied in that case and flagged in the report.
struct KnnOptions {
  int k = 4;
  int bootstrap = 200;
  std::uint64_t seed = 1;
  int dim_cap = 12;
};

struct KnnReport {
  ThermoReport report;
  bool jitter_applied = false;
};

KnnReport entropy_knn(const std::vector<double>& points, std::size_t n,
                      std::size_t dim, const KnnOptions& opts = {});

// Phase-space points of the window (sites with |site - center|_inf <= radius):
// coordinates ordered (q..., p...), one row per sample.
std::vector<double> window_points(const Ensemble& ens, const Site& center,
                                  int radius, std::size_t& dim_out);

KnnReport entropy_knn_window(const Ensemble& ens, const Site& center, int radius,
                             const KnnOptions& opts = {});

// Differential entropy of the density exp(-beta W) / Z on the line or circle,
// by quadrature: S = beta <W> + ln Z.
double onsite_density_entropy(const LatticeModel& model, double beta);

// Per-volume entropy sequences (Fekete approach from above within tolerance).
struct SpecificEntropy {
  std::vector<double> per_site;  // indexed by a = 1..a_max
  double value = 0.0;            // last element
  bool fekete_ok = true;         // elements exceed the running inf by <= tol
  double fekete_tol = 1e-3;
};

// Product state: constant sequence equal to the one-site entropy.
SpecificEntropy specific_entropy_product(double one_site_entropy, int a_max);

// Infinite-chain Gibbs state of a quadratic nearest-neighbor chain.
SpecificEntropy specific_entropy_chain(double onsite_stiffness, double pair_coeff,
                                       double beta, int a_max);

// Periodized Gaussian block: the aligned window Lambda(n a) is an exact tiling,
// so every element equals S_block / #Lambda(a); both routes are computed.
SpecificEntropy specific_entropy_periodized_gaussian(
    const Eigen::MatrixXd& block_cov_q, double p_variance, int block_a, int nu,
    int n_max);

}  // namespace lattice
