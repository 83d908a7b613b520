#include "lattice/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "lattice/dynamics.hpp"
#include "lattice/rng.hpp"
#include "lattice/stats.hpp"

namespace lattice {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kLn2PiE = 2.8378770664093454835606594728112;  // ln(2 pi e)
}  // namespace

bool is_quadratic(const LatticeModel& model) {
  if (model.onsite().kind != PotentialSpec::Kind::Polynomial) return false;
  if (model.onsite().degree() > 2) return false;
  for (const auto& t : model.terms()) {
    if (t.body.kind != BodySpec::Kind::PairPower || t.body.power != 2) return false;
  }
  return true;
}

Eigen::MatrixXd box_hessian(const LatticeModel& model, const BoxGeometry& geom) {
  const int d = model.site_dim();
  const std::size_t n = geom.n_sites() * d;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t site = 0; site < geom.n_sites(); ++site)
    for (int c = 0; c < d; ++c)
      k(site * d + c, site * d + c) += model.onsite().hess(0.0);
  std::vector<double> local, hess;
  for (const auto& bt : bind_terms(model, geom)) {
    const int nc = bt.term->body.n_coords();
    local.assign(nc, 0.0);
    hess.resize(nc * nc);
    bt.term->body.hessian(local.data(), hess.data());
    for (int i = 0; i < bt.term->arity(); ++i)
      for (int ci = 0; ci < d; ++ci)
        for (int j = 0; j < bt.term->arity(); ++j)
          for (int cj = 0; cj < d; ++cj)
            k(bt.sites[i] * d + ci, bt.sites[j] * d + cj) +=
                hess[(i * d + ci) * nc + (j * d + cj)];
  }
  return k;
}

double box_potential_offset(const LatticeModel& model, const BoxGeometry& geom) {
  double v = geom.n_sites() * model.site_dim() * model.onsite().value(0.0);
  std::vector<double> local;
  for (const auto& bt : bind_terms(model, geom)) {
    local.assign(bt.term->body.n_coords(), 0.0);
    v += bt.term->body.value(local.data());
  }
  return v;
}

double gaussian_entropy(const Eigen::MatrixXd& sigma) {
  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("gaussian_entropy: covariance not positive definite");
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < sigma.rows(); ++i)
    logdet += 2.0 * std::log(llt.matrixL()(i, i));
  return 0.5 * (sigma.rows() * kLn2PiE + logdet);
}

double gaussian_entropy_1d(double variance) {
  return 0.5 * (kLn2PiE + std::log(variance));
}

GaussianGibbs gaussian_gibbs(const LatticeModel& model, const BoxGeometry& geom,
                             double beta) {
  if (!is_quadratic(model))
    throw std::invalid_argument("gaussian_gibbs: model is not quadratic");
  if (beta <= 0) throw std::invalid_argument("gaussian_gibbs: beta must be positive");
  GaussianGibbs g;
  g.beta = beta;
  const Eigen::MatrixXd k = box_hessian(model, geom);
  const Eigen::Index n = k.rows();
  const Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("gaussian_gibbs: Hessian not positive definite");
  double logdet_k = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) logdet_k += 2.0 * std::log(llt.matrixL()(i, i));

  g.cov_q = llt.solve(Eigen::MatrixXd::Identity(n, n)) / beta;
  g.cov_p_diag = 1.0 / beta;
  const double v0 = box_potential_offset(model, *const_cast<BoxGeometry*>(&geom));

  // S = n ln(2 pi e) - 1/2 ln det(beta K) - (n/2) ln beta
  g.entropy = n * kLn2PiE -
              0.5 * (logdet_k + n * std::log(beta)) - 0.5 * n * std::log(beta);
  // <H> = n/beta + V0 (equipartition over 2n quadratic coordinates)
  g.mean_h = static_cast<double>(n) / beta + v0;
  // P_beta = -beta V0 + n ln(2 pi / beta) - 1/2 ln det K
  g.pressure = -beta * v0 + n * std::log(kTwoPi / beta) - 0.5 * logdet_k;
  return g;
}

Eigen::MatrixXd verlet_step_matrix(const Eigen::MatrixXd& hessian, double h) {
  const Eigen::Index n = hessian.rows();
  Eigen::MatrixXd kick = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  kick.block(n, 0, n, n) = -0.5 * h * hessian;
  Eigen::MatrixXd drift = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  drift.block(0, n, n, n) = h * Eigen::MatrixXd::Identity(n, n);
  return kick * drift * kick;
}

std::vector<double> transport_entropy_series(const Eigen::MatrixXd& sigma0,
                                             const Eigen::MatrixXd& hessian,
                                             double h, long n_steps, long stride) {
  const Eigen::MatrixXd l = verlet_step_matrix(hessian, h);
  Eigen::MatrixXd sigma = sigma0;
  std::vector<double> out;
  out.push_back(gaussian_entropy(sigma));
  for (long s = 1; s <= n_steps; ++s) {
    sigma = l * sigma * l.transpose();
    if (s % stride == 0 || s == n_steps) out.push_back(gaussian_entropy(sigma));
  }
  return out;
}

Eigen::VectorXd sample_gaussian(const Eigen::MatrixXd& sigma, std::uint64_t seed,
                                std::uint32_t sample_id) {
  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("sample_gaussian: covariance not positive definite");
  Rng rng(seed, sample_id, Stream::InitQ);
  Eigen::VectorXd z(sigma.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.gaussian();
  return llt.matrixL() * z;
}

namespace {

// Fourier symbol of the chain stiffness: s0 + 2 c (2 - 2 cos theta) would be
// the Laplacian convention; a pair power body c (q_i - q_j)^2 contributes
// second derivative 2c on the diagonal per bond, so the symbol is
// s0 + 2 c (1 - cos theta) * 2 = s0 + 4c (1 - cos theta) ... computed below
// directly from the bond Hessian: each bond adds 2c to both endpoints and
// -2c across, i.e. symbol s(theta) = s0 + 2c(2 - 2 cos theta).
double chain_symbol(double s0, double c, double theta) {
  return s0 + 2.0 * c * (2.0 - 2.0 * std::cos(theta));
}

}  // namespace

std::vector<double> chain_covariance(double onsite_stiffness, double pair_coeff,
                                     double beta, int max_lag) {
  const auto quad = stats::gauss_legendre(512, 0.0, M_PI);
  std::vector<double> cov(max_lag + 1, 0.0);
  for (int lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i)
      acc += quad.weights[i] * std::cos(lag * quad.nodes[i]) /
             chain_symbol(onsite_stiffness, pair_coeff, quad.nodes[i]);
    cov[lag] = acc / (M_PI * beta);
  }
  return cov;
}

std::vector<double> chain_entropy_sequence(double onsite_stiffness,
                                           double pair_coeff, double beta,
                                           int a_max) {
  const auto cov = chain_covariance(onsite_stiffness, pair_coeff, beta, 2 * a_max + 1);
  std::vector<double> out;
  for (int a = 1; a <= a_max; ++a) {
    const int n = 2 * a;
    Eigen::MatrixXd sigma(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sigma(i, j) = cov[std::abs(i - j)];
    const double sq = gaussian_entropy(sigma);
    const double sp = n * gaussian_entropy_1d(1.0 / beta);
    out.push_back((sq + sp) / n);
  }
  return out;
}

double chain_entropy_limit(double onsite_stiffness, double pair_coeff, double beta) {
  // Szego: s_q = 1/2 ln(2 pi e) - (1/2) (2 pi)^{-1} int ln(beta s(theta)) dtheta
  const auto quad = stats::gauss_legendre(512, 0.0, M_PI);
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    acc += quad.weights[i] *
           std::log(beta * chain_symbol(onsite_stiffness, pair_coeff, quad.nodes[i]));
  const double mean_log = acc / M_PI;
  const double sq = 0.5 * kLn2PiE - 0.5 * mean_log;
  const double sp = gaussian_entropy_1d(1.0 / beta);
  return sq + sp;
}

}  // namespace lattice
