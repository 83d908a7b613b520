#include "lattice/locality.hpp"

#include <cmath>
#include <stdexcept>

#include "lattice/dynamics.hpp"

namespace lattice {

Configuration restrict_to_box(const Configuration& cfg, int a) {
  const BoxGeometry& big = *cfg.geom;
  if (a >= big.scale())
    throw std::invalid_argument("restrict_to_box: target box is not smaller");
  auto geom = std::make_shared<BoxGeometry>(big.nu(), a);
  Configuration out = Configuration::zeros(geom, cfg.site_dim);
  const int d = cfg.site_dim;
  for (std::size_t k = 0; k < geom->n_sites(); ++k) {
    const auto src = big.index_of(geom->site(k));
    for (int c = 0; c < d; ++c) {
      out.q[k * d + c] = cfg.q[*src * d + c];
      out.p[k * d + c] = cfg.p[*src * d + c];
    }
  }
  return out;
}

std::vector<LocalityRow> locality_experiment(const LatticeModel& model,
                                             const Configuration& big_cfg,
                                             const std::vector<int>& scales,
                                             const Site& observer, double t,
                                             double h) {
  const int d = model.site_dim();
  IntegratorSchedule sched{h, t};

  Configuration ref = big_cfg;
  evolve(model, ref, sched);
  const auto ref_idx = ref.geom->index_of(observer);
  if (!ref_idx) throw std::invalid_argument("locality: observer outside reference box");

  std::vector<LocalityRow> rows;
  for (int a : scales) {
    Configuration small = restrict_to_box(big_cfg, a);
    const auto idx = small.geom->index_of(observer);
    if (!idx) throw std::invalid_argument("locality: observer outside Lambda(a)");
    const int gamma = model.gamma_to_complement(*small.geom)[*idx];
    evolve(model, small, sched);
    double err = 0.0;
    for (int c = 0; c < d; ++c) {
      err += std::fabs(small.q[*idx * d + c] - ref.q[*ref_idx * d + c]);
      err += std::fabs(small.p[*idx * d + c] - ref.p[*ref_idx * d + c]);
    }
    rows.push_back({a, gamma, err});
  }
  return rows;
}

}  // namespace lattice
