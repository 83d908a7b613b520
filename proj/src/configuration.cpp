#include "lattice/configuration.hpp"

#include <stdexcept>

namespace lattice {

Configuration Configuration::zeros(std::shared_ptr<const BoxGeometry> geom,
                                   int site_dim) {
  Configuration c;
  c.geom = std::move(geom);
  c.site_dim = site_dim;
  c.q.assign(c.geom->n_sites() * site_dim, 0.0);
  c.p.assign(c.geom->n_sites() * site_dim, 0.0);
  return c;
}

Ensemble::Ensemble(std::shared_ptr<const BoxGeometry> geom, int site_dim,
                   std::size_t n_samples)
    : geom_(std::move(geom)),
      site_dim_(site_dim),
      n_(n_samples),
      n_coords_(geom_->n_sites() * site_dim) {
  if (n_samples == 0) throw std::invalid_argument("Ensemble: N must be >= 1");
  q_.assign(n_coords_ * n_, 0.0);
  p_.assign(n_coords_ * n_, 0.0);
}

Configuration Ensemble::extract(std::size_t sample) const {
  Configuration c;
  c.geom = geom_;
  c.site_dim = site_dim_;
  c.q.resize(n_coords_);
  c.p.resize(n_coords_);
  for (std::size_t k = 0; k < n_coords_; ++k) {
    c.q[k] = q_[k * n_ + sample];
    c.p[k] = p_[k * n_ + sample];
  }
  return c;
}

void Ensemble::insert(std::size_t sample, const Configuration& cfg) {
  if (cfg.n_coords() != n_coords_)
    throw std::invalid_argument("Ensemble::insert: coordinate count mismatch");
  for (std::size_t k = 0; k < n_coords_; ++k) {
    q_[k * n_ + sample] = cfg.q[k];
    p_[k * n_ + sample] = cfg.p[k];
  }
}

Ensemble Ensemble::from_configuration(const Configuration& cfg) {
  Ensemble e(cfg.geom, cfg.site_dim, 1);
  e.insert(0, cfg);
  return e;
}

}  // namespace lattice
