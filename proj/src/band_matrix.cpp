#include "lattice/band_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "lattice/dynamics.hpp"

namespace lattice {

BandMatrix a_priori_matrix(const LatticeModel& model, const BoxGeometry& geom,
                           double c1) {
  BandMatrix b;
  b.bandwidth = model.range();
  b.entry = std::max(1.0, c1);
  const std::size_t n = geom.n_sites();
  b.A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    b.A(i, i) = b.entry;
    for (const auto& off : model.neighbor_offsets()) {
      const auto j = geom.index_of(add(geom.site(i), off));
      if (j) b.A(i, *j) = b.entry;
    }
  }
  b.op_norm_row = b.A.rowwise().sum().maxCoeff();
  return b;
}

Eigen::MatrixXd expm_scaled_squaring(const Eigen::MatrixXd& m, double rel_tol) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("expm: matrix must be square");
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd b = m / std::ldexp(1.0, s);

  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  const double cut = rel_tol / std::ldexp(1.0, s + 1);
  for (int k = 1; k <= 64; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    const double tn = term.cwiseAbs().maxCoeff();
    const double sn = sum.cwiseAbs().maxCoeff();
    if (tn <= cut * sn) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

BoundCheckResult a_priori_bound_check(const LatticeModel& model,
                                      const BandMatrix& band,
                                      const Ensemble& initial,
                                      const Ensemble& evolved, double t,
                                      double tol) {
  if (initial.n_samples() != evolved.n_samples() ||
      initial.geom().n_sites() != evolved.geom().n_sites())
    throw std::invalid_argument("bound_check: mismatched ensembles");
  const std::size_t n_sites = initial.geom().n_sites();
  const std::size_t n = initial.n_samples();

  std::vector<double> e0, et;
  noninteracting_energy_rows(model, initial, e0);
  noninteracting_energy_rows(model, evolved, et);

  const Eigen::MatrixXd prop = expm_scaled_squaring(t * band.A);

  BoundCheckResult res;
  bool first = true;
  for (std::size_t s = 0; s < n; ++s) {
    Eigen::VectorXd v0(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) v0(i) = e0[i * n + s];
    const Eigen::VectorXd rhs = prop * v0;
    const double scale = std::max(1.0, rhs.maxCoeff());
    for (std::size_t i = 0; i < n_sites; ++i) {
      const double margin = rhs(i) + tol * scale - et[i * n + s];
      if (first || margin < res.worst_margin) {
        res.worst_margin = margin;
        res.worst_site = i;
        res.worst_sample = s;
        first = false;
      }
      if (margin < 0) res.ok = false;
    }
  }
  return res;
}

}  // namespace lattice
