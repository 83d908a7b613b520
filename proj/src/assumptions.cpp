#include "lattice/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lattice/rng.hpp"

namespace lattice {

namespace {

constexpr double kTiny = 1e-12;

struct ProbeContext {
  const LatticeModel* model;
  BoxGeometry geom;                      // Lambda(D+1): covers every term at 0
  std::vector<BoundTerm> bound;
  std::vector<std::size_t> center_terms; // bound terms containing the center
  std::size_t center;
  std::vector<std::size_t> center_band;  // sites j with gamma(center, j) <= 1
};

ProbeContext make_context(const LatticeModel& m) {
  ProbeContext ctx{&m, BoxGeometry(m.nu(), m.range() + 1), {}, {}, 0, {}};
  ctx.bound = bind_terms(m, ctx.geom);
  const Site origin(m.nu(), 0);
  ctx.center = *ctx.geom.index_of(origin);
  for (std::size_t t = 0; t < ctx.bound.size(); ++t)
    for (std::size_t s : ctx.bound[t].sites)
      if (s == ctx.center) ctx.center_terms.push_back(t);
  for (std::size_t k = 0; k < ctx.geom.n_sites(); ++k)
    if (k == ctx.center ||
        m.gamma(origin, ctx.geom.site(k)) <= 1)
      ctx.center_band.push_back(k);
  return ctx;
}

double onsite_value(const LatticeModel& m, const double* q) {
  double v = 0.0;
  for (int c = 0; c < m.site_dim(); ++c) v += m.onsite().value(q[c]);
  return v;
}

// Sum over center-containing multi-site terms of d/dq_center W (all coords).
void interaction_force_at_center(const ProbeContext& ctx,
                                 const std::vector<double>& q,
                                 double* out) {
  const int d = ctx.model->site_dim();
  std::fill(out, out + d, 0.0);
  std::vector<double> local, grad;
  for (std::size_t t : ctx.center_terms) {
    const BoundTerm& bt = ctx.bound[t];
    const int nc = bt.term->body.n_coords();
    local.resize(nc);
    grad.resize(nc);
    for (int i = 0; i < bt.term->arity(); ++i)
      for (int c = 0; c < d; ++c)
        local[i * d + c] = q[bt.sites[i] * d + c];
    bt.term->body.grad(local.data(), grad.data());
    for (int i = 0; i < bt.term->arity(); ++i)
      if (bt.sites[i] == ctx.center)
        for (int c = 0; c < d; ++c) out[c] += grad[i * d + c];
  }
}

double interaction_energy_at_center(const ProbeContext& ctx,
                                    const std::vector<double>& q) {
  const int d = ctx.model->site_dim();
  double v = 0.0;
  std::vector<double> local;
  for (std::size_t t : ctx.center_terms) {
    const BoundTerm& bt = ctx.bound[t];
    local.resize(bt.term->body.n_coords());
    for (int i = 0; i < bt.term->arity(); ++i)
      for (int c = 0; c < d; ++c)
        local[i * d + c] = q[bt.sites[i] * d + c];
    v += bt.term->body.value(local.data());
  }
  return v;
}

// max over sites j of |sum_{terms containing center} d_j d_center W|, with the
// on-site second derivative included at j = center.
double mixed_hessian_max(const ProbeContext& ctx, const std::vector<double>& q) {
  const int d = ctx.model->site_dim();
  const std::size_t n = ctx.geom.n_sites();
  std::vector<double> acc(n * d * d, 0.0);
  std::vector<double> local, hess;
  for (std::size_t t : ctx.center_terms) {
    const BoundTerm& bt = ctx.bound[t];
    const int nc = bt.term->body.n_coords();
    local.resize(nc);
    hess.resize(nc * nc);
    for (int i = 0; i < bt.term->arity(); ++i)
      for (int c = 0; c < d; ++c)
        local[i * d + c] = q[bt.sites[i] * d + c];
    bt.term->body.hessian(local.data(), hess.data());
    for (int i = 0; i < bt.term->arity(); ++i) {
      if (bt.sites[i] != ctx.center) continue;
      for (int j = 0; j < bt.term->arity(); ++j)
        for (int ci = 0; ci < d; ++ci)
          for (int cj = 0; cj < d; ++cj)
            acc[(bt.sites[j] * d + ci) * d + cj] +=
                hess[(i * d + ci) * nc + (j * d + cj)];
    }
  }
  for (int c = 0; c < d; ++c)
    acc[(ctx.center * d + c) * d + c] +=
        ctx.model->onsite().hess(q[ctx.center * d + c]);
  double m = 0.0;
  for (double v : acc) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

const AssumptionResult* AssumptionReport::find(const std::string& id) const {
  for (const auto& r : items)
    if (r.id == id) return &r;
  return nullptr;
}

AssumptionReport validate_assumptions(const LatticeModel& model,
                                      const ProbePlan& probe) {
  AssumptionReport rep;
  const bool torus = model.space().kind == SpaceSpec::Kind::Torus;
  const double halfwidth =
      torus ? 0.5 * model.space().period : probe.grid_halfwidth;

  // F / R / TI hold by construction (checked at load time / smooth families /
  // canonical offset storage); recorded for the ledger of checks.
  rep.items.push_back({"F", true, true, static_cast<double>(model.range()),
                       "offset diameters <= range, checked at load"});
  rep.items.push_back({"R", true, true, 0.0, "polynomial/trigonometric families"});
  rep.items.push_back({"TI", true, true, 0.0, "terms stored in translated canonical form"});

  // --- on-site grid ---
  std::vector<double> grid(probe.grid_n);
  for (int i = 0; i < probe.grid_n; ++i)
    grid[i] = -halfwidth + 2.0 * halfwidth * i / (probe.grid_n - 1);
  double min_w = 1e300, max_w = -1e300;
  for (double x : grid) {
    const double w = model.onsite().value(x);
    if (!std::isfinite(w))
      throw std::runtime_error("validate_assumptions: non-finite on-site value");
    min_w = std::min(min_w, w);
    max_w = std::max(max_w, w);
  }

  // P1: nonnegative on-site potential
  {
    AssumptionResult r{"P1", min_w >= -kTiny, false, min_w, "min on probe grid"};
    rep.items.push_back(r);
  }

  // P2: pinning sublevel sets. On the torus this is trivial; on Euclidean
  // space fit conv(L(z)) subset L(a z + b) on the grid.
  if (torus) {
    rep.items.push_back({"P2", true, true, 0.0, "compact configuration space"});
    rep.p2_a = 1.0;
    rep.p2_b = max_w;
  } else {
    // hull of {W <= z} on the grid is [lo(z), hi(z)]; m(z) = max W on the hull
    bool pinned = model.onsite().value(grid.front()) > max_w / 2.0 &&
                  model.onsite().value(grid.back()) > max_w / 2.0;
    double a_fit = 1.0, b_fit = std::max(0.0, min_w);
    const int nz = 24;
    // probe sublevels up to half the edge growth so hulls stay inside the grid
    const double zmax = 0.45 * std::min(model.onsite().value(grid.front()),
                                        model.onsite().value(grid.back()));
    b_fit = model.onsite().value(0.0);
    for (int iz = 1; iz <= nz; ++iz) {
      const double z = zmax * iz / nz;
      double lo = 0.0, hi = 0.0;
      bool any = false;
      for (double x : grid) {
        if (model.onsite().value(x) <= z) {
          if (!any) {
            lo = hi = x;
            any = true;
          } else {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
          }
        }
      }
      if (!any) continue;
      double m = 0.0;
      for (double x : grid)
        if (x >= lo && x <= hi) m = std::max(m, model.onsite().value(x));
      if (z > 0) a_fit = std::max(a_fit, (m - b_fit) / z);
    }
    rep.p2_a = a_fit;
    rep.p2_b = b_fit;
    rep.items.push_back({"P2", pinned, false, a_fit,
                         "conv(L(z)) in L(az+b) fitted on grid"});
  }

  // P3: |q| <= C0 W(q)
  {
    AssumptionResult r{"P3", true, torus, 0.0, ""};
    if (torus) {
      r.note = "compact configuration space";
      r.constant = halfwidth / std::max(kTiny, min_w + 1.0);
    } else {
      double c0 = 0.0;
      for (double x : grid) {
        const double w = model.onsite().value(x);
        if (std::fabs(x) <= kTiny) continue;
        if (w <= kTiny) {
          r.pass = false;
          r.note = "on-site potential vanishes away from 0";
          break;
        }
        c0 = std::max(c0, std::fabs(x) / w);
      }
      r.constant = c0;
      if (r.pass) r.note = "C0 = max |q| / W(q) on grid";
    }
    rep.C0 = r.constant;
    rep.items.push_back(r);
  }

  // --- interaction checks on random local configurations ---
  const ProbeContext ctx = make_context(model);
  const int d = model.site_dim();
  const std::size_t ncoord = ctx.geom.n_sites() * d;
  Rng rng(probe.seed, 0, Stream::Probe);

  double c1 = 0.0, c2 = 0.0, c3 = 0.0, ss_ratio = 0.0;
  bool d_ok = true;
  std::string d_note;
  std::vector<double> q(ncoord), force(d), local;
  for (int it = 0; it < probe.n_random && d_ok; ++it) {
    for (auto& x : q) {
      x = probe.amplitude * rng.gaussian();
      if (torus) x = x - model.space().period * std::floor(x / model.space().period);
    }
    double denom = 0.0;
    for (std::size_t j : ctx.center_band) denom += onsite_value(model, &q[j * d]);
    if (!std::isfinite(denom))
      throw std::runtime_error("validate_assumptions: non-finite probe value");

    interaction_force_at_center(ctx, q, force.data());
    double f2 = 0.0;
    for (int c = 0; c < d; ++c) f2 += force[c] * force[c];
    const double w_int = std::fabs(interaction_energy_at_center(ctx, q));
    const double h_max = mixed_hessian_max(ctx, q);

    if (denom <= kTiny) {
      if (f2 > kTiny || w_int > kTiny || h_max > kTiny) {
        d_ok = false;
        d_note = "pinning vanishes while interactions do not";
      }
      continue;
    }
    c1 = std::max(c1, f2 / denom);
    c2 = std::max(c2, w_int / denom);
    c3 = std::max(c3, h_max / denom);

    // ss-like: per-term negative part against the member pinning average
    for (std::size_t t : ctx.center_terms) {
      const BoundTerm& bt = ctx.bound[t];
      local.resize(bt.term->body.n_coords());
      for (int i = 0; i < bt.term->arity(); ++i)
        for (int c = 0; c < d; ++c)
          local[i * d + c] = q[bt.sites[i] * d + c];
      const double w = bt.term->body.value(local.data());
      if (w >= 0) continue;
      double pin = 0.0;
      for (std::size_t s : bt.sites) pin += onsite_value(model, &q[s * d]);
      if (pin <= kTiny) {
        d_ok = false;
        d_note = "negative interaction with vanishing pinning";
        break;
      }
      ss_ratio = std::max(ss_ratio, -w * bt.term->arity() / pin);
    }
  }

  rep.C1 = c1;
  rep.C2 = c2;
  rep.C3 = c3;
  rep.ss_epsilon = 1.0 - ss_ratio;
  rep.items.push_back({"D1", d_ok, false, c1, d_ok ? "C1 = max |F_int|^2 / band pinning" : d_note});
  rep.items.push_back({"D2", d_ok, false, c2, d_ok ? "C2 = max |W_int| / band pinning" : d_note});
  rep.items.push_back({"D3", d_ok, false, c3, d_ok ? "C3 = max mixed second derivative / band pinning" : d_note});
  rep.items.push_back({"ss-like", d_ok && ss_ratio < 1.0, false, rep.ss_epsilon,
                       "epsilon = 1 - max #D |min(0, W_D)| / sum of member pinning"});

  // degree comparison for the polynomial family: pair degree <= n + 1
  if (model.onsite().kind == PotentialSpec::Kind::Polynomial &&
      model.onsite().degree() >= 2) {
    const int n_half = model.onsite().degree() / 2;
    bool deg_ok = true;
    for (const auto& t : model.terms())
      if (t.body.max_degree() > n_half + 1) deg_ok = false;
    rep.items.push_back({"degree", deg_ok, false,
                         static_cast<double>(n_half + 1),
                         "pair degree <= n + 1 against on-site degree 2n"});
  }

  rep.all_pass = true;
  for (const auto& r : rep.items) rep.all_pass = rep.all_pass && r.pass;
  return rep;
}

}  // namespace lattice
