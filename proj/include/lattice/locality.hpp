// Severing-scale convergence: evolve the same initial data on nested boxes and
// watch the disturbance from the smaller boundary decay with the interaction
// distance to the observer.
#pragma once

#include <vector>

#include "lattice/configuration.hpp"
#include "lattice/model.hpp"

namespace lattice {

struct LocalityRow {
  int a = 0;        // severing scale
  int gamma = 0;    // gamma(observer, complement of Lambda(a))
  double err = 0.0; // |q^a - q^b| + |p^a - p^b| at the observer, time t
};

// big_cfg lives on Lambda(b); every a must satisfy a < b and contain the
// observer. Initial data on Lambda(a) is the restriction of big_cfg.
std::vector<LocalityRow> locality_experiment(const LatticeModel& model,
                                             const Configuration& big_cfg,
                                             const std::vector<int>& scales,
                                             const Site& observer, double t,
                                             double h);

// Restriction of a configuration to a smaller box (sitewise copy).
Configuration restrict_to_box(const Configuration& cfg, int a);

}  // namespace lattice
