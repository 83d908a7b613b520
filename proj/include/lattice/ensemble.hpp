// Monte-Carlo representation of translation-invariant states: sampling,
// severed-flow pushforward, periodization, time averaging, moment and
// observable estimators. All randomness flows through per-sample counter-based
// substreams, so results do not depend on evaluation order.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lattice/configuration.hpp"
#include "lattice/dynamics.hpp"
#include "lattice/model.hpp"
#include "lattice/observable.hpp"
#include "lattice/stats.hpp"

namespace lattice {

struct McmcParams {
  int burnin_sweeps = 10000;
  double target_accept_lo = 0.55;
  double target_accept_hi = 0.60;
  double initial_step = 0.1;
  int thinning_cap = 200;  // safety cap on the autocorrelation-based thinning
};

struct StateSpec {
  enum class Kind {
    ProductGaussian,     // independent gaussians per coordinate
    ProductOnsiteGibbs,  // q ~ exp(-beta W_0(q)) per coordinate, p gaussian
    GibbsFiniteVolume,   // q ~ exp(-beta H_Lambda(q)) via MALA, p gaussian
  };
  Kind kind = Kind::ProductGaussian;
  double q_var = 1.0;
  double p_var = 1.0;
  double q_mean = 0.0;
  double p_mean = 0.0;
  // Linear mean ramps along the first lattice axis break translation
  // invariance (negative controls).
  double q_mean_slope = 0.0;
  double p_mean_slope = 0.0;
  double beta = 1.0;
  McmcParams mcmc;

  bool translation_invariant() const {
    return q_mean_slope == 0.0 && p_mean_slope == 0.0;
  }
};

struct GibbsSamplerInfo {
  double acceptance = 0.0;
  double step = 0.0;
  int thinning = 1;
  double tau_int = 0.0;
};

Ensemble sample(const LatticeModel& model, std::shared_ptr<const BoxGeometry> geom,
                const StateSpec& spec, std::size_t n, std::uint64_t seed,
                GibbsSamplerInfo* info = nullptr);

// mu_t = mu o tau_t^{-1}, realized samplewise by the severed flow.
void pushforward(Ensemble& ens, const LatticeModel& model,
                 const IntegratorSchedule& sched, const EvolveOptions& opts = {});

// Periodization: tile Lambda(m) with independent block samples on a partition
// shifted by a uniform j in Lambda(a); the output law is invariant under
// lattice shifts. Block samples are drawn with replacement from `block`.
Ensemble periodize(const Ensemble& block, const LatticeModel& model, int window_m,
                   std::size_t n_out, std::uint64_t seed);

// Stratified realization of (1/T) int_0^T mu_t dt: each output sample is
// evolved to its own time drawn from a stratified uniform grid on [0, T]
// (times rounded to the step grid).
Ensemble time_average(const Ensemble& ens, const LatticeModel& model, double T,
                      double h, std::uint64_t seed,
                      const EvolveOptions& opts = {});

// Sites eligible for translation-averaged estimators after evolving to time t:
// gamma(i, complement) > 2 + ceil(t) * D, and every term containing the site
// inside the box.
std::vector<std::size_t> interior_sites(const LatticeModel& model,
                                        const BoxGeometry& geom, double t);

// M_zeta = <|E_0^{n.i.}|^zeta>, averaged over interior sites per sample.
stats::MeanErr moment_M(const Ensemble& ens, const LatticeModel& model, double zeta,
                        double t_evolved = 0.0);

// Fraction of samples with max_i E_i^{n.i.} / (1+|i|_inf)^r <= C.
double membership_fraction(const Ensemble& ens, const LatticeModel& model,
                           double r, double c);

// Interior-site averaged full local energy per sample.
std::vector<double> interior_full_energy(const Ensemble& ens,
                                         const LatticeModel& model,
                                         double t_evolved = 0.0);

struct ExpectResult {
  double value = 0.0;
  double stderr_ = 0.0;       // bootstrap
  std::size_t n_samples = 0;
  std::size_t n_sites = 0;
};

ExpectResult expect(const Ensemble& ens, const LatticeModel& model,
                    const Observable& f, double t_evolved = 0.0,
                    std::uint64_t boot_seed = 1);

struct PanelDistance {
  double distance = 0.0;      // max over the panel of |E1 f - E2 f|
  double combined_sigma = 0.0;  // bootstrap sigma of the argmax entry
  std::string argmax;
};

PanelDistance observable_distance(const Ensemble& a, const Ensemble& b,
                                  const LatticeModel& model,
                                  const std::vector<Observable>& panel,
                                  double t_evolved = 0.0);

// Binary container (header + raw doubles) and CSV export.
void save_ensemble(const Ensemble& ens, const std::string& path);
Ensemble load_ensemble(const std::string& path);
void export_ensemble_csv(const Ensemble& ens, const std::string& path,
                         std::size_t max_samples = 64);

}  // namespace lattice
