// Phase-space storage. A Configuration is a single (q, p) point on a box; an
// Ensemble stores N samples coordinate-major (one contiguous row per
// coordinate) so ensembles evolve in lockstep through the kernels.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lattice/geometry.hpp"

namespace lattice {

struct Configuration {
  std::shared_ptr<const BoxGeometry> geom;
  int site_dim = 1;
  std::vector<double> q;  // [site * site_dim + c]
  std::vector<double> p;

  std::size_t n_coords() const { return q.size(); }
  static Configuration zeros(std::shared_ptr<const BoxGeometry> geom, int site_dim);
};

class Ensemble {
 public:
  Ensemble() = default;
  Ensemble(std::shared_ptr<const BoxGeometry> geom, int site_dim,
           std::size_t n_samples);

  const BoxGeometry& geom() const { return *geom_; }
  std::shared_ptr<const BoxGeometry> geom_ptr() const { return geom_; }
  int site_dim() const { return site_dim_; }
  std::size_t n_samples() const { return n_; }
  std::size_t n_coords() const { return n_coords_; }

  double* q_row(std::size_t coord) { return q_.data() + coord * n_; }
  const double* q_row(std::size_t coord) const { return q_.data() + coord * n_; }
  double* p_row(std::size_t coord) { return p_.data() + coord * n_; }
  const double* p_row(std::size_t coord) const { return p_.data() + coord * n_; }

  std::vector<double>& q_data() { return q_; }
  std::vector<double>& p_data() { return p_; }
  const std::vector<double>& q_data() const { return q_; }
  const std::vector<double>& p_data() const { return p_; }

  Configuration extract(std::size_t sample) const;
  void insert(std::size_t sample, const Configuration& cfg);
  static Ensemble from_configuration(const Configuration& cfg);

  // provenance
  std::uint64_t seed = 0;
  std::string model_hash;
  std::string generator;

 private:
  std::shared_ptr<const BoxGeometry> geom_;
  int site_dim_ = 1;
  std::size_t n_ = 0;
  std::size_t n_coords_ = 0;
  std::vector<double> q_, p_;
};

}  // namespace lattice
