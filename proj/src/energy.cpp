#include "lattice/energy.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lattice {

std::string ThermoReport::to_json() const {
  nlohmann::json j;
  j["value"] = value;
  j["stderr"] = stderr_;
  j["method"] = method;
  j["N"] = n;
  j["seed"] = seed;
  if (!inputs_hash.empty()) j["inputs_hash"] = inputs_hash;
  return j.dump();
}

double energy(const LatticeModel& model, const Configuration& cfg, EnergyMode mode,
              const Site& site) {
  Ensemble e = Ensemble::from_configuration(cfg);
  switch (mode) {
    case EnergyMode::BoxTotal:
      return box_total_energy(model, e)[0];
    case EnergyMode::NonInteracting: {
      const auto idx = cfg.geom->index_of(site);
      if (!idx) throw std::invalid_argument("energy: site outside box");
      std::vector<double> rows;
      noninteracting_energy_rows(model, e, rows);
      return rows[*idx];
    }
    case EnergyMode::Full: {
      const auto idx = cfg.geom->index_of(site);
      if (!idx) throw std::invalid_argument("energy: site outside box");
      ForcePlan plan(model, *cfg.geom);
      return full_local_energy(plan, e, *idx)[0];
    }
  }
  return 0.0;
}

ThermoReport energy(const Ensemble& ens, const LatticeModel& model, EnergyMode mode,
                    double t_evolved) {
  ThermoReport rep;
  rep.method = "mc";
  rep.seed = ens.seed;
  rep.n = ens.n_samples();
  switch (mode) {
    case EnergyMode::BoxTotal: {
      const auto h = box_total_energy(model, ens);
      const auto me = stats::mean_stderr(h);
      rep.value = me.value;
      rep.stderr_ = me.stderr_;
      break;
    }
    case EnergyMode::Full: {
      const auto per_sample = interior_full_energy(ens, model, t_evolved);
      const auto me = stats::mean_stderr(per_sample);
      rep.value = me.value;
      rep.stderr_ = me.stderr_;
      break;
    }
    case EnergyMode::NonInteracting: {
      const auto sites = interior_sites(model, ens.geom(), t_evolved);
      std::vector<double> rows;
      noninteracting_energy_rows(model, ens, rows);
      const std::size_t n = ens.n_samples();
      std::vector<double> per_sample(n, 0.0);
      for (std::size_t site : sites) {
        const double* row = rows.data() + site * n;
        for (std::size_t s = 0; s < n; ++s) per_sample[s] += row[s];
      }
      for (auto& v : per_sample) v /= sites.size();
      const auto me = stats::mean_stderr(per_sample);
      rep.value = me.value;
      rep.stderr_ = me.stderr_;
      break;
    }
  }
  return rep;
}

}  // namespace lattice
