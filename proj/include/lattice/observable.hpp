// Strictly local, bounded Lipschitz observables evaluated on windows around a
// center site.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lattice/configuration.hpp"

namespace lattice {

// View of one sample restricted to the window |offset|_inf <= radius around a
// center site. Coordinates are addressed by lattice offset from the center.
class LocalWindow {
 public:
  LocalWindow(const Ensemble& ens, std::size_t center, std::size_t sample)
      : ens_(&ens), center_(center), sample_(sample) {}

  double q(const Site& offset, int c = 0) const;
  double p(const Site& offset, int c = 0) const;
  double q0(int c = 0) const { return q(Site(ens_->geom().nu(), 0), c); }
  double p0(int c = 0) const { return p(Site(ens_->geom().nu(), 0), c); }

 private:
  const Ensemble* ens_;
  std::size_t center_;
  std::size_t sample_;
};

struct Observable {
  std::string name;
  int support_radius = 0;
  double lipschitz = 1.0;
  std::function<double(const LocalWindow&)> eval;
};

// A fixed panel of bounded local observables used for state-distance
// diagnostics (tanh/cos compressions of low-order monomials).
std::vector<Observable> default_observable_panel(int nu);

}  // namespace lattice
