// Energy functionals and the common report carrier.
#pragma once

#include <cstdint>
#include <string>

#include "lattice/ensemble.hpp"
#include "lattice/model.hpp"

namespace lattice {

enum class EnergyMode { NonInteracting, Full, BoxTotal };

struct ThermoReport {
  double value = 0.0;
  double stderr_ = 0.0;
  std::string method;  // "analytic" | "mc" | "quadrature" | "knn"
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string inputs_hash;

  std::string to_json() const;
};

// Pointwise-exact on configurations.
double energy(const LatticeModel& model, const Configuration& cfg, EnergyMode mode,
              const Site& site);

// MC mean on ensembles; per-particle modes are interior-site averaged,
// BoxTotal is reported per sample (divide by volume externally if desired).
ThermoReport energy(const Ensemble& ens, const LatticeModel& model, EnergyMode mode,
                    double t_evolved = 0.0);

}  // namespace lattice
