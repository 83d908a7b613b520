#include "lattice/dynamics.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "lattice/kernels.hpp"

namespace lattice {

long IntegratorSchedule::n_steps() const {
  if (h <= 0) throw std::invalid_argument("schedule: h must be positive");
  const double steps = t_end / h;
  if (steps < 0 || steps > 4e9) throw std::invalid_argument("schedule: step count out of range");
  return std::lround(steps);
}

ForcePlan::ForcePlan(const LatticeModel& model, const BoxGeometry& geom)
    : model_(&model), geom_(&geom) {
  bound_ = bind_terms(model, geom);
  by_site_ = terms_by_site(bound_, geom.n_sites());
  const int d = model.site_dim();
  for (std::size_t t = 0; t < bound_.size(); ++t) {
    const BoundTerm& bt = bound_[t];
    switch (bt.term->body.kind) {
      case BodySpec::Kind::PairPower:
        for (int c = 0; c < d; ++c)
          pow_bonds_.push_back({bt.sites[0] * d + c, bt.sites[1] * d + c,
                                bt.term->body.coeff, bt.term->body.power});
        break;
      case BodySpec::Kind::PairCosine:
        cos_bonds_.push_back({bt.sites[0], bt.sites[1], bt.term->body.coeff});
        break;
      case BodySpec::Kind::Multinomial:
        general_terms_.push_back(t);
        break;
    }
  }
  onsite_value_coeffs_ = model.onsite().horner_value_coeffs();
  onsite_neg_grad_coeffs_ = model.onsite().horner_neg_grad_coeffs();
}

void ForcePlan::forces(const Ensemble& ens, std::vector<double>& f) const {
  const std::size_t n = ens.n_samples();
  const std::size_t rows = ens.n_coords();
  f.assign(rows * n, 0.0);
  const KernelTable& k = kernels();

  if (model_->onsite().kind == PotentialSpec::Kind::Polynomial) {
    const int deg = static_cast<int>(onsite_neg_grad_coeffs_.size()) - 1;
    for (std::size_t r = 0; r < rows; ++r)
      k.horner(f.data() + r * n, ens.q_row(r), onsite_neg_grad_coeffs_.data(), deg,
               true, n);
  } else {
    for (std::size_t r = 0; r < rows; ++r) {
      const double* q = ens.q_row(r);
      double* fr = f.data() + r * n;
      for (std::size_t s = 0; s < n; ++s) fr[s] -= model_->onsite().grad(q[s]);
    }
  }

  for (const auto& b : pow_bonds_)
    k.bond_force_pow(f.data() + b.row_i * n, f.data() + b.row_j * n,
                     ens.q_row(b.row_i), ens.q_row(b.row_j), b.coeff, b.power, n);

  for (const auto& b : cos_bonds_) {
    const double* qi = ens.q_row(b.row_i);
    const double* qj = ens.q_row(b.row_j);
    double* fi = f.data() + b.row_i * n;
    double* fj = f.data() + b.row_j * n;
    for (std::size_t s = 0; s < n; ++s) {
      const double g = b.coeff * std::sin(qi[s] - qj[s]);
      fi[s] -= g;
      fj[s] += g;
    }
  }

  if (!general_terms_.empty()) {
    const int d = model_->site_dim();
    std::vector<double> local, grad;
    for (std::size_t t : general_terms_) {
      const BoundTerm& bt = bound_[t];
      const int nc = bt.term->body.n_coords();
      local.resize(nc);
      grad.resize(nc);
      for (std::size_t s = 0; s < n; ++s) {
        for (int i = 0; i < bt.term->arity(); ++i)
          for (int c = 0; c < d; ++c)
            local[i * d + c] = ens.q_row(bt.sites[i] * d + c)[s];
        bt.term->body.grad(local.data(), grad.data());
        for (int i = 0; i < bt.term->arity(); ++i)
          for (int c = 0; c < d; ++c)
            f[(bt.sites[i] * d + c) * n + s] -= grad[i * d + c];
      }
    }
  }
}

void ForcePlan::potential(const Ensemble& ens, std::vector<double>& acc) const {
  const std::size_t n = ens.n_samples();
  acc.assign(n, 0.0);
  const KernelTable& k = kernels();

  if (model_->onsite().kind == PotentialSpec::Kind::Polynomial) {
    const int deg = static_cast<int>(onsite_value_coeffs_.size()) - 1;
    for (std::size_t r = 0; r < ens.n_coords(); ++r)
      k.horner(acc.data(), ens.q_row(r), onsite_value_coeffs_.data(), deg, true, n);
  } else {
    for (std::size_t r = 0; r < ens.n_coords(); ++r) {
      const double* q = ens.q_row(r);
      for (std::size_t s = 0; s < n; ++s) acc[s] += model_->onsite().value(q[s]);
    }
  }

  for (const auto& b : pow_bonds_)
    k.bond_energy_pow(acc.data(), ens.q_row(b.row_i), ens.q_row(b.row_j), b.coeff,
                      b.power, n);
  for (const auto& b : cos_bonds_) {
    const double* qi = ens.q_row(b.row_i);
    const double* qj = ens.q_row(b.row_j);
    for (std::size_t s = 0; s < n; ++s)
      acc[s] += b.coeff * (1.0 - std::cos(qi[s] - qj[s]));
  }
  if (!general_terms_.empty()) {
    const int d = model_->site_dim();
    std::vector<double> local;
    for (std::size_t t : general_terms_) {
      const BoundTerm& bt = bound_[t];
      local.resize(bt.term->body.n_coords());
      for (std::size_t s = 0; s < n; ++s) {
        for (int i = 0; i < bt.term->arity(); ++i)
          for (int c = 0; c < d; ++c)
            local[i * d + c] = ens.q_row(bt.sites[i] * d + c)[s];
        acc[s] += bt.term->body.value(local.data());
      }
    }
  }
}

std::vector<double> ForcePlan::potential_gradient(const Configuration& cfg) const {
  Ensemble e = Ensemble::from_configuration(cfg);
  std::vector<double> f;
  forces(e, f);
  for (auto& v : f) v = -v;
  return f;
}

double ForcePlan::potential_value(const Configuration& cfg) const {
  Ensemble e = Ensemble::from_configuration(cfg);
  std::vector<double> acc;
  potential(e, acc);
  return acc[0];
}

std::vector<double> force(const LatticeModel& model, const Configuration& cfg,
                          const Site& site) {
  const auto idx = cfg.geom->index_of(site);
  if (!idx) throw std::invalid_argument("force: site outside the box");
  ForcePlan plan(model, *cfg.geom);
  Ensemble e = Ensemble::from_configuration(cfg);
  std::vector<double> f;
  plan.forces(e, f);
  std::vector<double> out(model.site_dim());
  for (int c = 0; c < model.site_dim(); ++c)
    out[c] = f[(*idx * model.site_dim() + c)];
  return out;
}

namespace {

void half_kick(Ensemble& ens, const std::vector<double>& f, double h) {
  const std::size_t n = ens.n_samples();
  const KernelTable& k = kernels();
  for (std::size_t r = 0; r < ens.n_coords(); ++r)
    k.axpy(ens.p_row(r), f.data() + r * n, 0.5 * h, n);
}

void drift(const LatticeModel& model, Ensemble& ens, double h) {
  const std::size_t n = ens.n_samples();
  const KernelTable& k = kernels();
  const bool torus = model.space().kind == SpaceSpec::Kind::Torus;
  for (std::size_t r = 0; r < ens.n_coords(); ++r) {
    k.axpy(ens.q_row(r), ens.p_row(r), h, n);
    if (torus) k.wrap_torus(ens.q_row(r), model.space().period, n);
  }
}

void check_state(const LatticeModel& model, const Ensemble& ens, double ceiling) {
  std::vector<double> e;
  noninteracting_energy_rows(model, ens, e);
  const std::size_t n = ens.n_samples();
  for (std::size_t site = 0; site < ens.geom().n_sites(); ++site) {
    const double* row = e.data() + site * n;
    for (std::size_t s = 0; s < n; ++s) {
      if (!std::isfinite(row[s]))
        throw BlowupError("evolve: non-finite state", site, s);
      if (row[s] > ceiling)
        throw BlowupError("evolve: per-site energy exceeded ceiling (step too large?)",
                          site, s);
    }
  }
}

}  // namespace

void step(const ForcePlan& plan, Ensemble& ens, double h) {
  std::vector<double> f;
  plan.forces(ens, f);
  half_kick(ens, f, h);
  drift(plan.model(), ens, h);
  plan.forces(ens, f);
  half_kick(ens, f, h);
}

void evolve(const LatticeModel& model, Ensemble& ens, const IntegratorSchedule& sched,
            const EvolveOptions& opts) {
  const long n_steps = sched.n_steps();
  if (n_steps == 0) return;
  ForcePlan plan(model, ens.geom());
  std::vector<double> f;
  plan.forces(ens, f);
  for (long s = 0; s < n_steps; ++s) {
    half_kick(ens, f, sched.h);
    drift(model, ens, sched.h);
    plan.forces(ens, f);
    half_kick(ens, f, sched.h);
    if (opts.check_every > 0 && ((s + 1) % opts.check_every == 0 || s + 1 == n_steps))
      check_state(model, ens, opts.blowup_ceiling);
  }
}

void evolve(const LatticeModel& model, Configuration& cfg,
            const IntegratorSchedule& sched, const EvolveOptions& opts) {
  Ensemble e = Ensemble::from_configuration(cfg);
  evolve(model, e, sched, opts);
  cfg = e.extract(0);
}

void time_reverse(Configuration& cfg) {
  for (auto& v : cfg.p) v = -v;
}

void time_reverse(Ensemble& ens) {
  kernels().scale(ens.p_data().data(), -1.0, ens.p_data().size());
}

double poisson_bracket_E0_H(const LatticeModel& model, const Configuration& cfg,
                            const Site& center) {
  // {E_0, H} = sum over terms strictly containing the center of
  //   -p_0 dW/dq_0 + (1/#D) sum_{x in D} p_x dW/dq_x
  const auto c_idx = cfg.geom->index_of(center);
  if (!c_idx) throw std::invalid_argument("poisson_bracket: center outside box");
  const int d = model.site_dim();

  // Each interaction family must have at least one translate containing the
  // center inside the box; otherwise the local energy there is mutilated.
  for (const auto& term : model.terms()) {
    bool covered = term.offsets.empty();
    for (const auto& anchor : term.offsets) {
      // center = base + anchor -> base = center - anchor
      const Site base = sub(center, anchor);
      bool fits = true;
      for (const auto& off : term.offsets)
        fits = fits && cfg.geom->contains(add(base, off));
      covered = covered || fits;
    }
    if (!covered)
      throw std::invalid_argument(
          "poisson_bracket: box too small around the center site");
  }

  const std::vector<BoundTerm> bound = bind_terms(model, *cfg.geom);
  double acc = 0.0;
  std::vector<double> local, grad;
  for (const auto& bt : bound) {
    bool has_center = false;
    for (std::size_t s : bt.sites) has_center |= (s == *c_idx);
    if (!has_center) continue;
    const int nc = bt.term->body.n_coords();
    local.resize(nc);
    grad.resize(nc);
    for (int i = 0; i < bt.term->arity(); ++i)
      for (int c = 0; c < d; ++c)
        local[i * d + c] = cfg.q[bt.sites[i] * d + c];
    bt.term->body.grad(local.data(), grad.data());
    const double inv_arity = 1.0 / bt.term->arity();
    for (int i = 0; i < bt.term->arity(); ++i) {
      for (int c = 0; c < d; ++c) {
        const double px = cfg.p[bt.sites[i] * d + c];
        acc += inv_arity * px * grad[i * d + c];
        if (bt.sites[i] == *c_idx) acc -= px * grad[i * d + c];
      }
    }
  }
  return acc;
}

void noninteracting_energy_rows(const LatticeModel& model, const Ensemble& ens,
                                std::vector<double>& out) {
  const std::size_t n = ens.n_samples();
  const std::size_t n_sites = ens.geom().n_sites();
  const int d = model.site_dim();
  out.assign(n_sites * n, 0.0);
  const KernelTable& k = kernels();
  const auto value_coeffs = model.onsite().horner_value_coeffs();
  const int deg = static_cast<int>(value_coeffs.size()) - 1;
  for (std::size_t site = 0; site < n_sites; ++site) {
    double* row = out.data() + site * n;
    for (int c = 0; c < d; ++c) {
      k.accum_half_sq(row, ens.p_row(site * d + c), n);
      if (model.onsite().kind == PotentialSpec::Kind::Polynomial) {
        k.horner(row, ens.q_row(site * d + c), value_coeffs.data(), deg, true, n);
      } else {
        const double* q = ens.q_row(site * d + c);
        for (std::size_t s = 0; s < n; ++s) row[s] += model.onsite().value(q[s]);
      }
    }
  }
}

std::vector<double> box_total_energy(const LatticeModel& model, const Ensemble& ens) {
  ForcePlan plan(model, ens.geom());
  std::vector<double> acc;
  plan.potential(ens, acc);
  const KernelTable& k = kernels();
  for (std::size_t r = 0; r < ens.n_coords(); ++r)
    k.accum_half_sq(acc.data(), ens.p_row(r), ens.n_samples());
  return acc;
}

double box_total_energy(const LatticeModel& model, const Configuration& cfg) {
  Ensemble e = Ensemble::from_configuration(cfg);
  return box_total_energy(model, e)[0];
}

std::vector<double> full_local_energy(const ForcePlan& plan, const Ensemble& ens,
                                      std::size_t site) {
  const std::size_t n = ens.n_samples();
  const int d = plan.model().site_dim();
  std::vector<double> out(n, 0.0);
  const KernelTable& k = kernels();
  const auto value_coeffs = plan.model().onsite().horner_value_coeffs();
  const int deg = static_cast<int>(value_coeffs.size()) - 1;
  for (int c = 0; c < d; ++c) {
    k.accum_half_sq(out.data(), ens.p_row(site * d + c), n);
    if (plan.model().onsite().kind == PotentialSpec::Kind::Polynomial) {
      k.horner(out.data(), ens.q_row(site * d + c), value_coeffs.data(), deg, true, n);
    } else {
      const double* q = ens.q_row(site * d + c);
      for (std::size_t s = 0; s < n; ++s) out[s] += plan.model().onsite().value(q[s]);
    }
  }
  std::vector<double> local;
  for (std::size_t t : plan.by_site()[site]) {
    const BoundTerm& bt = plan.bound_terms()[t];
    const double w = 1.0 / bt.term->arity();
    if (bt.term->body.kind == BodySpec::Kind::PairPower) {
      for (int c = 0; c < d; ++c)
        k.bond_energy_pow(out.data(), ens.q_row(bt.sites[0] * d + c),
                          ens.q_row(bt.sites[1] * d + c), w * bt.term->body.coeff,
                          bt.term->body.power, n);
    } else {
      local.resize(bt.term->body.n_coords());
      for (std::size_t s = 0; s < n; ++s) {
        for (int i = 0; i < bt.term->arity(); ++i)
          for (int c = 0; c < d; ++c)
            local[i * d + c] = ens.q_row(bt.sites[i] * d + c)[s];
        out[s] += w * bt.term->body.value(local.data());
      }
    }
  }
  return out;
}

}  // namespace lattice
