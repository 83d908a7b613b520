// The a-priori comparison matrix A (max{1, C1} on the gamma <= 1 band) and the
// bound E_i(t) <= [e^{tA} E(0)]_i it controls.
#pragma once

#include <Eigen/Dense>

#include "lattice/configuration.hpp"
#include "lattice/model.hpp"

namespace lattice {

struct BandMatrix {
  int bandwidth = 0;
  double entry = 1.0;          // max{1, C1}
  Eigen::MatrixXd A;           // dense on the box; symmetric, TI pattern
  double op_norm_row = 0.0;    // max row sum (used to scale the exponential)
};

BandMatrix a_priori_matrix(const LatticeModel& model, const BoxGeometry& geom,
                           double c1);

// exp(M) by scaling and squaring with a truncated Taylor series; the series is
// cut when the running term falls below rel_tol of the partial sum (scaled by
// the squaring depth).
Eigen::MatrixXd expm_scaled_squaring(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

struct BoundCheckResult {
  bool ok = true;
  double worst_margin = 0.0;   // min over sites/samples of (rhs - lhs)
  std::size_t worst_site = 0;
  std::size_t worst_sample = 0;
};

// Verifies E_i(t) <= sum_j [e^{tA}]_{ij} E_j(0) + tol * scale for every sample.
BoundCheckResult a_priori_bound_check(const LatticeModel& model,
                                      const BandMatrix& band,
                                      const Ensemble& initial,
                                      const Ensemble& evolved, double t,
                                      double tol = 1e-8);

}  // namespace lattice
