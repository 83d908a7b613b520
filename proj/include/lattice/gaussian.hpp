// Exact Gaussian machinery for quadratic models: box Hessians, Gibbs
// covariances and their thermodynamic identities, symplectic covariance
// transport, and Toeplitz marginals of the infinite translation-invariant
// Gaussian chain.
#pragma once

#include <Eigen/Dense>

#include "lattice/configuration.hpp"
#include "lattice/model.hpp"

namespace lattice {

// True when the severed potential is exactly quadratic (polynomial on-site of
// degree <= 2 and pair-power bodies with power 2).
bool is_quadratic(const LatticeModel& model);

// Hessian of the severed box potential in the q coordinates (constant for
// quadratic models; evaluated at q = 0 otherwise).
Eigen::MatrixXd box_hessian(const LatticeModel& model, const BoxGeometry& geom);

// Constant part of the severed potential (value at q = 0).
double box_potential_offset(const LatticeModel& model, const BoxGeometry& geom);

struct GaussianGibbs {
  double beta = 1.0;
  Eigen::MatrixXd cov_q;  // (beta K)^{-1}
  double cov_p_diag = 1.0;  // 1 / beta per momentum coordinate
  double entropy = 0.0;     // S_Lambda of the Gibbs measure
  double mean_h = 0.0;      // <H_Lambda>
  double pressure = 0.0;    // P_beta(H_Lambda) = ln int e^{-beta H}
};

// Exact finite-volume Gibbs data for a quadratic model.
GaussianGibbs gaussian_gibbs(const LatticeModel& model, const BoxGeometry& geom,
                             double beta);

// Entropy of a centered Gaussian with covariance sigma: 0.5 ln((2 pi e)^n det).
double gaussian_entropy(const Eigen::MatrixXd& sigma);
double gaussian_entropy_1d(double variance);

// One Verlet step as a linear map on (q, p) for the quadratic model with
// Hessian K: the composition kick(h/2) drift(h) kick(h/2).
Eigen::MatrixXd verlet_step_matrix(const Eigen::MatrixXd& hessian, double h);

// Transport a phase-space covariance through n Verlet steps and report the
// Gaussian entropy after each block of `stride` steps.
std::vector<double> transport_entropy_series(const Eigen::MatrixXd& sigma0,
                                             const Eigen::MatrixXd& hessian,
                                             double h, long n_steps, long stride);

// Sample from a centered Gaussian with the given covariance (phase ordering
// [q..., p...]); used by analytic-channel cross checks.
Eigen::VectorXd sample_gaussian(const Eigen::MatrixXd& sigma, std::uint64_t seed,
                                std::uint32_t sample_id);

// Covariance c(k) = <q_0 q_k> of the infinite-volume Gibbs state of a
// quadratic nearest-neighbor chain (on-site stiffness w0'' = s0, pair
// 2*coeff*(2 - 2cos)). Computed by quadrature of 1/(beta * symbol).
std::vector<double> chain_covariance(double onsite_stiffness, double pair_coeff,
                                     double beta, int max_lag);

// S_{Lambda(a)} / #Lambda(a) for the q-marginal plus momentum part, for the
// infinite-chain Gibbs state restricted to boxes a = 1..a_max.
std::vector<double> chain_entropy_sequence(double onsite_stiffness,
                                           double pair_coeff, double beta,
                                           int a_max);

// Szego limit of the same sequence (specific entropy of the chain state).
double chain_entropy_limit(double onsite_stiffness, double pair_coeff, double beta);

}  // namespace lattice
