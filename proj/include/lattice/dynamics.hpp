// Severed Hamiltonian dynamics on a box: only interaction terms entirely
// inside the box contribute. Time stepping is Stormer-Verlet, which is
// volume-preserving and time-reversible step by step.
#pragma once

#include <cstdint>
#include <vector>

#include "lattice/configuration.hpp"
#include "lattice/model.hpp"

namespace lattice {

struct IntegratorSchedule {
  double h = 1e-3;
  double t_end = 1.0;
  long n_steps() const;
};

struct EvolveOptions {
  double blowup_ceiling = 1e12;  // per-site noninteracting energy tripwire
  int check_every = 200;         // steps between finiteness/ceiling scans
};

// Per-geometry force evaluation plan; groups bonds by kernel-friendly bodies.
class ForcePlan {
 public:
  ForcePlan(const LatticeModel& model, const BoxGeometry& geom);

  const LatticeModel& model() const { return *model_; }
  const std::vector<BoundTerm>& bound_terms() const { return bound_; }
  const std::vector<std::vector<std::size_t>>& by_site() const { return by_site_; }

  // f (coord rows x n) accumulates the full severed force -dV/dq; overwritten.
  void forces(const Ensemble& ens, std::vector<double>& f) const;
  // severed box potential V per sample (accumulated into acc)
  void potential(const Ensemble& ens, std::vector<double>& acc) const;
  // gradient of the severed potential for a single configuration
  std::vector<double> potential_gradient(const Configuration& cfg) const;
  double potential_value(const Configuration& cfg) const;

 private:
  struct PowBond {
    std::size_t row_i, row_j;  // coordinate rows
    double coeff;
    int power;
  };
  struct CosBond {
    std::size_t row_i, row_j;
    double coeff;
  };
  const LatticeModel* model_;
  const BoxGeometry* geom_;
  std::vector<BoundTerm> bound_;
  std::vector<std::vector<std::size_t>> by_site_;
  std::vector<PowBond> pow_bonds_;
  std::vector<CosBond> cos_bonds_;
  std::vector<std::size_t> general_terms_;  // indices into bound_ (multinomials)
  std::vector<double> onsite_value_coeffs_;
  std::vector<double> onsite_neg_grad_coeffs_;
};

// Severed force at one site (site_dim components). Terms crossing the box
// boundary are absent by construction.
std::vector<double> force(const LatticeModel& model, const Configuration& cfg,
                          const Site& site);

// One Verlet step / full evolution; deterministic given (model, state, schedule).
void step(const ForcePlan& plan, Ensemble& ens, double h);
void evolve(const LatticeModel& model, Ensemble& ens, const IntegratorSchedule& sched,
            const EvolveOptions& opts = {});
void evolve(const LatticeModel& model, Configuration& cfg,
            const IntegratorSchedule& sched, const EvolveOptions& opts = {});

// theta(q, p) = (q, -p)
void time_reverse(Configuration& cfg);
void time_reverse(Ensemble& ens);

// {E_0, H} evaluated exactly at a configuration, for the site `center`.
// Requires every term containing `center` to lie inside the box.
double poisson_bracket_E0_H(const LatticeModel& model, const Configuration& cfg,
                            const Site& center);

// Noninteracting per-site energy rows: out[site][sample]; out sized/overwritten.
void noninteracting_energy_rows(const LatticeModel& model, const Ensemble& ens,
                                std::vector<double>& out);

// H_Lambda per sample (kinetic + severed potential).
std::vector<double> box_total_energy(const LatticeModel& model, const Ensemble& ens);
double box_total_energy(const LatticeModel& model, const Configuration& cfg);

// Full local energy E_i = K_i + sum_{terms containing i} W / #Delta at one site.
// Valid only when every term containing the site lies inside the box
// (check eligibility with gamma_to_complement); per-sample values.
std::vector<double> full_local_energy(const ForcePlan& plan, const Ensemble& ens,
                                      std::size_t site);

struct BlowupError : std::runtime_error {
  BlowupError(const std::string& what, std::size_t site, std::size_t sample)
      : std::runtime_error(what), site(site), sample(sample) {}
  std::size_t site, sample;
};

}  // namespace lattice
