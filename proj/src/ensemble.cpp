#include "lattice/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "lattice/kernels.hpp"
#include "lattice/rng.hpp"

namespace lattice {

namespace {

// --- exact rejection sampler for the one-coordinate density exp(-beta W0) ---

struct OnsiteSampler {
  // euclidean: gaussian envelope exp(-beta alpha q^2); torus: uniform envelope
  bool torus = false;
  double period = 0.0;
  double beta = 1.0;
  double alpha = 0.5;
  double log_m = 0.0;  // log of the envelope headroom
  const PotentialSpec* w0;

  double draw(Rng& rng) const {
    for (int it = 0; it < 1000000; ++it) {
      double x, log_ratio;
      if (torus) {
        x = period * rng.uniform();
        log_ratio = -beta * w0->value(x) - log_m;
      } else {
        x = rng.gaussian() / std::sqrt(2.0 * beta * alpha);
        log_ratio = -beta * (w0->value(x) - alpha * x * x) - log_m;
      }
      if (std::log(rng.uniform()) <= log_ratio) return x;
    }
    throw std::runtime_error("onsite rejection sampler failed to accept");
  }
};

OnsiteSampler make_onsite_sampler(const LatticeModel& model, double beta) {
  OnsiteSampler s;
  s.beta = beta;
  s.w0 = &model.onsite();
  if (model.space().kind == SpaceSpec::Kind::Torus) {
    s.torus = true;
    s.period = model.space().period;
    double min_w = 1e300;
    for (int i = 0; i < 4096; ++i)
      min_w = std::min(min_w, s.w0->value(s.period * i / 4096));
    s.log_m = -beta * min_w + 1e-6;
    return s;
  }
  const int deg = model.onsite().degree();
  if (deg < 2)
    throw std::invalid_argument("onsite sampler needs a pinning potential");
  s.alpha = deg == 2 ? 0.5 * model.onsite().coeffs[2] : 0.5;
  // headroom: C = max(alpha q^2 - W0) over a wide grid
  double c = -1e300;
  const double hw = 24.0;
  for (int i = 0; i <= 9600; ++i) {
    const double x = -hw + 2 * hw * i / 9600;
    c = std::max(c, s.alpha * x * x - s.w0->value(x));
  }
  s.log_m = s.beta * c + 1e-6;
  return s;
}

double gaussian_with(Rng& rng, double mean, double var) {
  return mean + std::sqrt(var) * rng.gaussian();
}

// --- MALA for the finite-volume Gibbs measure over positions ---

struct MalaChain {
  const LatticeModel* model;
  const ForcePlan* plan;
  std::shared_ptr<const BoxGeometry> geom;
  double beta;
  double step;
  Rng rng;
  Configuration q_state;
  double v_cur = 0.0;
  std::vector<double> grad_cur;
  long proposals = 0, accepts = 0;

  MalaChain(const LatticeModel& m, const ForcePlan& p,
            std::shared_ptr<const BoxGeometry> g, double b, double step0,
            std::uint64_t seed)
      : model(&m), plan(&p), geom(std::move(g)), beta(b), step(step0),
        rng(seed, 0, Stream::Mcmc), q_state(Configuration::zeros(geom, m.site_dim())) {}

  void init_from(const std::vector<double>& q0) {
    q_state.q = q0;
    v_cur = plan->potential_value(q_state);
    grad_cur = plan->potential_gradient(q_state);
  }

  bool advance() {
    const std::size_t n = q_state.q.size();
    ++proposals;
    Configuration prop = q_state;
    double fwd = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double drift = -step * beta * grad_cur[k];
      const double noise = std::sqrt(2.0 * step) * rng.gaussian();
      prop.q[k] = q_state.q[k] + drift + noise;
      fwd += noise * noise;
    }
    if (model->space().kind == SpaceSpec::Kind::Torus)
      kernels().wrap_torus(prop.q.data(), model->space().period, n);
    const double v_prop = plan->potential_value(prop);
    const auto grad_prop = plan->potential_gradient(prop);
    double bwd = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double diff = q_state.q[k] - prop.q[k];
      if (model->space().kind == SpaceSpec::Kind::Torus) {
        const double per = model->space().period;
        diff -= per * std::round(diff / per);
      }
      const double r = diff + step * beta * grad_prop[k];
      bwd += r * r;
    }
    const double log_acc = -beta * (v_prop - v_cur) +
                           (-bwd + fwd) / (4.0 * step);
    if (std::log(rng.uniform()) <= log_acc) {
      q_state = std::move(prop);
      v_cur = v_prop;
      grad_cur = grad_prop;
      ++accepts;
      return true;
    }
    return false;
  }
};

int estimate_thinning(const std::vector<double>& series, int cap, double* tau_out) {
  const std::size_t n = series.size();
  const double m = stats::mean(series);
  double var = 0.0;
  for (double v : series) var += (v - m) * (v - m);
  var /= n;
  if (var <= 0) {
    if (tau_out) *tau_out = 1.0;
    return 1;
  }
  double tau = 1.0;
  for (std::size_t lag = 1; lag < n / 4; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      c += (series[i] - m) * (series[i + lag] - m);
    c /= (n - lag) * var;
    if (c <= 0.0) break;  // initial positive sequence
    tau += 2.0 * c;
  }
  if (tau_out) *tau_out = tau;
  return std::min(cap, std::max(1, static_cast<int>(std::ceil(2.0 * tau))));
}

}  // namespace

Ensemble sample(const LatticeModel& model, std::shared_ptr<const BoxGeometry> geom,
                const StateSpec& spec, std::size_t n, std::uint64_t seed,
                GibbsSamplerInfo* info) {
  Ensemble ens(geom, model.site_dim(), n);
  ens.seed = seed;
  ens.model_hash = model.hash();
  const int d = model.site_dim();
  const std::size_t n_sites = geom->n_sites();

  switch (spec.kind) {
    case StateSpec::Kind::ProductGaussian: {
      if (spec.q_var <= 0 || spec.p_var <= 0)
        throw std::invalid_argument("sample: variances must be positive");
      ens.generator = "product_gaussian";
      for (std::size_t s = 0; s < n; ++s) {
        Rng rq(seed, static_cast<std::uint32_t>(s), Stream::InitQ);
        Rng rp(seed, static_cast<std::uint32_t>(s), Stream::InitP);
        for (std::size_t site = 0; site < n_sites; ++site) {
          const double axis = geom->site(site)[0];
          for (int c = 0; c < d; ++c) {
            ens.q_row(site * d + c)[s] = gaussian_with(
                rq, spec.q_mean + spec.q_mean_slope * axis, spec.q_var);
            ens.p_row(site * d + c)[s] = gaussian_with(
                rp, spec.p_mean + spec.p_mean_slope * axis, spec.p_var);
          }
        }
      }
      if (model.space().kind == SpaceSpec::Kind::Torus)
        kernels().wrap_torus(ens.q_data().data(), model.space().period,
                             ens.q_data().size());
      break;
    }
    case StateSpec::Kind::ProductOnsiteGibbs: {
      if (spec.beta <= 0) throw std::invalid_argument("sample: beta must be positive");
      ens.generator = "product_onsite_gibbs";
      const OnsiteSampler os = make_onsite_sampler(model, spec.beta);
      const double p_var = 1.0 / spec.beta;
      for (std::size_t s = 0; s < n; ++s) {
        Rng rq(seed, static_cast<std::uint32_t>(s), Stream::InitQ);
        Rng rp(seed, static_cast<std::uint32_t>(s), Stream::InitP);
        for (std::size_t k = 0; k < ens.n_coords(); ++k) {
          ens.q_row(k)[s] = os.draw(rq);
          ens.p_row(k)[s] = gaussian_with(rp, 0.0, p_var);
        }
      }
      if (model.space().kind == SpaceSpec::Kind::Torus)
        kernels().wrap_torus(ens.q_data().data(), model.space().period,
                             ens.q_data().size());
      break;
    }
    case StateSpec::Kind::GibbsFiniteVolume: {
      if (spec.beta <= 0) throw std::invalid_argument("sample: beta must be positive");
      ens.generator = "gibbs_finite_volume_mala";
      ForcePlan plan(model, *geom);
      MalaChain chain(model, plan, geom, spec.beta, spec.mcmc.initial_step, seed);

      // start from the product on-site state
      const OnsiteSampler os = make_onsite_sampler(model, spec.beta);
      Rng r0(seed, 0, Stream::InitQ);
      std::vector<double> q0(ens.n_coords());
      for (auto& v : q0) v = os.draw(r0);
      chain.init_from(q0);

      // burn-in with step adaptation toward the target acceptance window
      const int tune_block = 50;
      long acc_block = 0;
      for (int sweep = 0; sweep < spec.mcmc.burnin_sweeps; ++sweep) {
        if (chain.advance()) ++acc_block;
        if ((sweep + 1) % tune_block == 0) {
          const double rate = static_cast<double>(acc_block) / tune_block;
          if (rate < spec.mcmc.target_accept_lo) chain.step *= 0.8;
          else if (rate > spec.mcmc.target_accept_hi) chain.step *= 1.2;
          acc_block = 0;
        }
      }

      // thinning from the integrated autocorrelation of the potential
      std::vector<double> series;
      series.reserve(2000);
      for (int i = 0; i < 2000; ++i) {
        chain.advance();
        series.push_back(chain.v_cur);
      }
      double tau = 1.0;
      const int thin = estimate_thinning(series, spec.mcmc.thinning_cap, &tau);

      chain.proposals = 0;
      chain.accepts = 0;
      for (std::size_t s = 0; s < n; ++s) {
        for (int i = 0; i < thin; ++i) chain.advance();
        for (std::size_t k = 0; k < ens.n_coords(); ++k)
          ens.q_row(k)[s] = chain.q_state.q[k];
        Rng rp(seed, static_cast<std::uint32_t>(s), Stream::InitP);
        for (std::size_t k = 0; k < ens.n_coords(); ++k)
          ens.p_row(k)[s] = gaussian_with(rp, 0.0, 1.0 / spec.beta);
      }
      const double acceptance =
          static_cast<double>(chain.accepts) / std::max(1L, chain.proposals);
      if (info) {
        info->acceptance = acceptance;
        info->step = chain.step;
        info->thinning = thin;
        info->tau_int = tau;
      }
      if (acceptance < 0.10)
        throw std::runtime_error(
            "gibbs sampler: acceptance below 10% after auto-tuning");
      break;
    }
  }
  return ens;
}

void pushforward(Ensemble& ens, const LatticeModel& model,
                 const IntegratorSchedule& sched, const EvolveOptions& opts) {
  evolve(model, ens, sched, opts);
}

Ensemble periodize(const Ensemble& block, const LatticeModel& model, int window_m,
                   std::size_t n_out, std::uint64_t seed) {
  const int a = block.geom().scale();
  const int nu = block.geom().nu();
  const int d = block.site_dim();
  if (window_m < a)
    throw std::invalid_argument("periodize: window must be at least the block");
  auto wgeom = std::make_shared<BoxGeometry>(nu, window_m);
  Ensemble out(wgeom, d, n_out);
  out.seed = seed;
  out.model_hash = block.model_hash;
  out.generator = "periodized(" + block.generator + ")";
  BoxGeometry block_geom(nu, a);

  for (std::size_t s = 0; s < n_out; ++s) {
    Rng rng(seed, static_cast<std::uint32_t>(s), Stream::Shift);
    // uniform shift j in Lambda(a)
    Site j(nu);
    for (int dphase = 0; dphase < nu; ++dphase)
      j[dphase] = static_cast<int>(rng.below(2 * a)) - a + 1;
    // independent block sample per tile, drawn with replacement
    std::map<Site, std::size_t> tile_sample;
    for (std::size_t k = 0; k < wgeom->n_sites(); ++k) {
      const Site& x = wgeom->site(k);
      Site tile(nu), local(nu);
      for (int c = 0; c < nu; ++c) {
        const int y = x[c] - j[c];
        // y in (-a, a] maps to tile 0
        const int t = static_cast<int>(std::floor(double(y + a - 1) / (2 * a)));
        tile[c] = t;
        local[c] = y - 2 * a * t;
      }
      auto it = tile_sample.find(tile);
      if (it == tile_sample.end())
        it = tile_sample.emplace(tile, rng.below(block.n_samples())).first;
      const std::size_t src_site = *block_geom.index_of(local);
      for (int c = 0; c < d; ++c) {
        out.q_row(k * d + c)[s] = block.q_row(src_site * d + c)[it->second];
        out.p_row(k * d + c)[s] = block.p_row(src_site * d + c)[it->second];
      }
    }
  }
  return out;
}

Ensemble time_average(const Ensemble& ens, const LatticeModel& model, double T,
                      double h, std::uint64_t seed, const EvolveOptions& opts) {
  if (T <= 0) throw std::invalid_argument("time_average: T must be positive");
  const std::size_t n = ens.n_samples();
  std::vector<long> steps(n);
  long max_steps = 0;
  for (std::size_t s = 0; s < n; ++s) {
    Rng rng(seed, static_cast<std::uint32_t>(s), Stream::Times);
    const double t = T * (static_cast<double>(s) + rng.uniform()) / n;
    steps[s] = std::lround(t / h);
    max_steps = std::max(max_steps, steps[s]);
  }

  Ensemble work = ens;
  Ensemble out = ens;
  out.seed = seed;
  out.generator = "time_average(" + ens.generator + ")";
  ForcePlan plan(model, ens.geom());
  auto emit = [&](long k) {
    for (std::size_t s = 0; s < n; ++s) {
      if (steps[s] != k) continue;
      for (std::size_t r = 0; r < work.n_coords(); ++r) {
        out.q_row(r)[s] = work.q_row(r)[s];
        out.p_row(r)[s] = work.p_row(r)[s];
      }
    }
  };
  emit(0);
  for (long k = 1; k <= max_steps; ++k) {
    step(plan, work, h);
    if (opts.check_every > 0 && k % opts.check_every == 0) {
      std::vector<double> e;
      noninteracting_energy_rows(model, work, e);
      for (double v : e)
        if (!std::isfinite(v) || v > opts.blowup_ceiling)
          throw BlowupError("time_average: blow-up during evolution", 0, 0);
    }
    emit(k);
  }
  return out;
}

std::vector<std::size_t> interior_sites(const LatticeModel& model,
                                        const BoxGeometry& geom, double t) {
  const int min_gamma = 3 + static_cast<int>(std::ceil(std::max(0.0, t))) * model.range();
  const auto g = model.gamma_to_complement(geom);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] >= min_gamma || g[k] == kGammaInfinite) out.push_back(k);
  if (out.empty())
    throw std::invalid_argument("interior_sites: box too small for eligibility rule");
  return out;
}

stats::MeanErr moment_M(const Ensemble& ens, const LatticeModel& model, double zeta,
                        double t_evolved) {
  if (zeta < 1.0) throw std::invalid_argument("moment_M: zeta must be >= 1");
  const auto sites = interior_sites(model, ens.geom(), t_evolved);
  std::vector<double> e;
  noninteracting_energy_rows(model, ens, e);
  const std::size_t n = ens.n_samples();
  std::vector<double> per_sample(n, 0.0);
  for (std::size_t site : sites) {
    const double* row = e.data() + site * n;
    for (std::size_t s = 0; s < n; ++s)
      per_sample[s] += std::pow(std::fabs(row[s]), zeta);
  }
  for (auto& v : per_sample) v /= sites.size();
  return stats::mean_stderr(per_sample);
}

double membership_fraction(const Ensemble& ens, const LatticeModel& model,
                           double r, double c) {
  if (r <= 0 || c < 0) throw std::invalid_argument("membership_fraction: bad r or C");
  std::vector<double> e;
  noninteracting_energy_rows(model, ens, e);
  const std::size_t n = ens.n_samples();
  const std::size_t n_sites = ens.geom().n_sites();
  std::vector<double> weight(n_sites);
  for (std::size_t k = 0; k < n_sites; ++k)
    weight[k] = std::pow(1.0 + linf_norm(ens.geom().site(k)), r);
  std::size_t inside = 0;
  for (std::size_t s = 0; s < n; ++s) {
    double m = 0.0;
    for (std::size_t k = 0; k < n_sites; ++k)
      m = std::max(m, e[k * n + s] / weight[k]);
    if (m <= c) ++inside;
  }
  return static_cast<double>(inside) / n;
}

std::vector<double> interior_full_energy(const Ensemble& ens,
                                         const LatticeModel& model,
                                         double t_evolved) {
  const auto sites = interior_sites(model, ens.geom(), t_evolved);
  ForcePlan plan(model, ens.geom());
  const std::size_t n = ens.n_samples();
  std::vector<double> acc(n, 0.0);
  for (std::size_t site : sites) {
    const auto e = full_local_energy(plan, ens, site);
    for (std::size_t s = 0; s < n; ++s) acc[s] += e[s];
  }
  for (auto& v : acc) v /= sites.size();
  return acc;
}

namespace {

std::vector<double> per_sample_observable(const Ensemble& ens,
                                          const LatticeModel& model,
                                          const Observable& f, double t_evolved,
                                          std::size_t* n_sites_out) {
  std::vector<std::size_t> centers;
  for (std::size_t k : interior_sites(model, ens.geom(), t_evolved))
    if (ens.geom().linf_to_edge(ens.geom().site(k)) >= f.support_radius)
      centers.push_back(k);
  if (centers.empty())
    throw std::invalid_argument("expect: observable support exceeds the interior");
  if (n_sites_out) *n_sites_out = centers.size();
  const std::size_t n = ens.n_samples();
  std::vector<double> per_sample(n, 0.0);
  for (std::size_t k : centers)
    for (std::size_t s = 0; s < n; ++s)
      per_sample[s] += f.eval(LocalWindow(ens, k, s));
  for (auto& v : per_sample) v /= centers.size();
  return per_sample;
}

}  // namespace

ExpectResult expect(const Ensemble& ens, const LatticeModel& model,
                    const Observable& f, double t_evolved,
                    std::uint64_t boot_seed) {
  ExpectResult r;
  const auto per_sample =
      per_sample_observable(ens, model, f, t_evolved, &r.n_sites);
  r.n_samples = ens.n_samples();
  r.value = stats::mean(per_sample);
  r.stderr_ = stats::bootstrap_stderr(per_sample, 200, boot_seed);
  return r;
}

PanelDistance observable_distance(const Ensemble& a, const Ensemble& b,
                                  const LatticeModel& model,
                                  const std::vector<Observable>& panel,
                                  double t_evolved) {
  PanelDistance out;
  for (const auto& f : panel) {
    const auto ra = expect(a, model, f, t_evolved);
    const auto rb = expect(b, model, f, t_evolved);
    const double dist = std::fabs(ra.value - rb.value);
    if (dist >= out.distance) {
      out.distance = dist;
      out.combined_sigma =
          std::sqrt(ra.stderr_ * ra.stderr_ + rb.stderr_ * rb.stderr_);
      out.argmax = f.name;
    }
  }
  return out;
}

// --- IO ---

namespace {
constexpr char kMagic[8] = {'L', 'E', 'N', 'S', '0', '1', '\n', '\0'};

void write_str(std::ostream& os, const std::string& s) {
  const std::uint64_t len = s.size();
  os.write(reinterpret_cast<const char*>(&len), sizeof(len));
  os.write(s.data(), len);
}

std::string read_str(std::istream& is) {
  std::uint64_t len = 0;
  is.read(reinterpret_cast<char*>(&len), sizeof(len));
  if (len > (1u << 20)) throw std::runtime_error("ensemble file: bad string length");
  std::string s(len, '\0');
  is.read(s.data(), len);
  return s;
}
}  // namespace

void save_ensemble(const Ensemble& ens, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write ensemble file: " + path);
  os.write(kMagic, sizeof(kMagic));
  const std::uint64_t head[5] = {
      static_cast<std::uint64_t>(ens.geom().nu()),
      static_cast<std::uint64_t>(ens.geom().scale()),
      static_cast<std::uint64_t>(ens.site_dim()),
      static_cast<std::uint64_t>(ens.n_samples()), ens.seed};
  os.write(reinterpret_cast<const char*>(head), sizeof(head));
  write_str(os, ens.model_hash);
  write_str(os, ens.generator);
  os.write(reinterpret_cast<const char*>(ens.q_data().data()),
           ens.q_data().size() * sizeof(double));
  os.write(reinterpret_cast<const char*>(ens.p_data().data()),
           ens.p_data().size() * sizeof(double));
}

Ensemble load_ensemble(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open ensemble file: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not an ensemble file: " + path);
  std::uint64_t head[5];
  is.read(reinterpret_cast<char*>(head), sizeof(head));
  auto geom = std::make_shared<BoxGeometry>(static_cast<int>(head[0]),
                                            static_cast<int>(head[1]));
  Ensemble ens(geom, static_cast<int>(head[2]), head[3]);
  ens.seed = head[4];
  ens.model_hash = read_str(is);
  ens.generator = read_str(is);
  is.read(reinterpret_cast<char*>(ens.q_data().data()),
          ens.q_data().size() * sizeof(double));
  is.read(reinterpret_cast<char*>(ens.p_data().data()),
          ens.p_data().size() * sizeof(double));
  if (!is) throw std::runtime_error("truncated ensemble file: " + path);
  return ens;
}

void export_ensemble_csv(const Ensemble& ens, const std::string& path,
                         std::size_t max_samples) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write csv: " + path);
  os << "# model_hash=" << ens.model_hash << " seed=" << ens.seed
     << " generator=" << ens.generator << "\n";
  os << "sample,site,coord,q,p\n";
  os.precision(17);
  const std::size_t n = std::min(max_samples, ens.n_samples());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t site = 0; site < ens.geom().n_sites(); ++site)
      for (int c = 0; c < ens.site_dim(); ++c)
        os << s << ',' << site << ',' << c << ','
           << ens.q_row(site * ens.site_dim() + c)[s] << ','
           << ens.p_row(site * ens.site_dim() + c)[s] << "\n";
}

}  // namespace lattice
