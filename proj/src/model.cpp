#include "lattice/model.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lattice {

using nlohmann::json;

namespace {

// Sort offsets lexicographically and translate so the minimum is 0. The body's
// coordinate order follows the offset order, so multinomial exponent lists are
// permuted along with it.
InteractionTerm canonicalize(InteractionTerm t) {
  const int arity = t.arity();
  std::vector<int> perm(arity);
  for (int i = 0; i < arity; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return t.offsets[a] < t.offsets[b];
  });
  std::vector<Site> sorted(arity);
  for (int i = 0; i < arity; ++i) sorted[i] = t.offsets[perm[i]];
  for (int i = 1; i < arity; ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::invalid_argument("interaction term has duplicate offsets");
  const Site base = sorted[0];
  for (auto& o : sorted) o = sub(o, base);
  t.offsets = std::move(sorted);
  if (t.body.kind == BodySpec::Kind::Multinomial) {
    for (auto& m : t.body.mono) {
      std::vector<int> p(arity);
      for (int i = 0; i < arity; ++i) p[i] = m.powers[perm[i]];
      m.powers = std::move(p);
    }
  }
  return t;
}

}  // namespace

LatticeModel::LatticeModel(int nu, int site_dim, SpaceSpec space,
                           PotentialSpec onsite, std::vector<InteractionTerm> terms,
                           int range, std::string name)
    : nu_(nu),
      site_dim_(site_dim),
      space_(space),
      onsite_(std::move(onsite)),
      range_(range),
      name_(std::move(name)) {
  if (nu < 1) throw std::invalid_argument("model: nu must be positive");
  if (site_dim < 1) throw std::invalid_argument("model: site_dim must be positive");
  if (range < 1) throw std::invalid_argument("model: range must be positive");
  if (onsite_.kind == PotentialSpec::Kind::Polynomial) {
    const int deg = onsite_.degree();
    if (deg > 0 && (deg % 2 != 0 || onsite_.coeffs[deg] <= 0.0))
      throw std::invalid_argument(
          "model: polynomial on-site potential needs even degree and positive "
          "leading coefficient");
  } else if (space_.kind != SpaceSpec::Kind::Torus) {
    throw std::invalid_argument("model: cosine on-site potential requires torus space");
  }

  for (auto& t : terms) {
    if (t.arity() < 2 || t.arity() > 3)
      throw std::invalid_argument("model: term arity must be 2 or 3");
    t.body.arity = t.arity();
    t.body.site_dim = site_dim_;
    if (t.body.kind == BodySpec::Kind::PairCosine) {
      if (space_.kind != SpaceSpec::Kind::Torus)
        throw std::invalid_argument("model: pair cosine requires torus space");
      if (t.arity() != 2 || site_dim_ != 1)
        throw std::invalid_argument("model: pair cosine is a two-body scalar term");
    }
    if (t.body.kind == BodySpec::Kind::PairPower && t.arity() != 2)
      throw std::invalid_argument("model: pair power body needs arity 2");
    if (t.body.kind == BodySpec::Kind::Multinomial) {
      if (site_dim_ != 1)
        throw std::invalid_argument("model: multinomial bodies need site_dim 1");
      for (const auto& m : t.body.mono)
        if (static_cast<int>(m.powers.size()) != t.arity())
          throw std::invalid_argument("model: multinomial exponent count != arity");
    }
    for (const auto& o : t.offsets)
      if (static_cast<int>(o.size()) != nu_)
        throw std::invalid_argument("model: offset dimension != nu");
    terms_.push_back(canonicalize(std::move(t)));
    // finite range: l-inf diameter of the offset set
    for (const auto& o : terms_.back().offsets)
      if (linf_norm(o) > range_)
        throw std::invalid_argument("model: term offsets exceed the declared range");
  }

  std::set<Site> nb;
  for (const auto& t : terms_) {
    for (const auto& o1 : t.offsets)
      for (const auto& o2 : t.offsets)
        if (o1 != o2) nb.insert(sub(o2, o1));
  }
  neighbor_offsets_.assign(nb.begin(), nb.end());
  hash_ = [this] {
    std::ostringstream h;
    h << std::hex << fnv1a64(canonical_description());
    return h.str();
  }();
}

int LatticeModel::gamma(const Site& i, const Site& j, int cap) const {
  if (i == j) return 0;
  if (neighbor_offsets_.empty()) return kGammaInfinite;
  std::map<Site, int> dist;
  std::deque<Site> queue;
  dist[i] = 0;
  queue.push_back(i);
  while (!queue.empty()) {
    Site cur = queue.front();
    queue.pop_front();
    const int d = dist[cur];
    if (d >= cap) continue;
    for (const auto& off : neighbor_offsets_) {
      Site nxt = add(cur, off);
      if (dist.count(nxt)) continue;
      if (nxt == j) return d + 1;
      dist[nxt] = d + 1;
      queue.push_back(nxt);
    }
  }
  return kGammaInfinite;
}

std::vector<int> LatticeModel::gamma_to_complement(const BoxGeometry& geom) const {
  std::vector<int> g(geom.n_sites(), kGammaInfinite);
  if (neighbor_offsets_.empty()) return g;
  // multi-source BFS: sources are the box sites adjacent to the complement
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < geom.n_sites(); ++k) {
    for (const auto& off : neighbor_offsets_) {
      if (!geom.contains(add(geom.site(k), off))) {
        g[k] = 1;
        queue.push_back(k);
        break;
      }
    }
  }
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& off : neighbor_offsets_) {
      const auto idx = geom.index_of(add(geom.site(cur), off));
      if (!idx) continue;
      if (g[*idx] > g[cur] + 1) {
        g[*idx] = g[cur] + 1;
        queue.push_back(*idx);
      }
    }
  }
  return g;
}

std::vector<std::size_t> LatticeModel::interior_boundary(const BoxGeometry& geom) const {
  std::vector<std::size_t> out;
  const auto g = gamma_to_complement(geom);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] == 1) out.push_back(k);
  return out;
}

std::vector<BoundTerm> bind_terms(const LatticeModel& model, const BoxGeometry& geom) {
  std::vector<BoundTerm> out;
  for (const auto& term : model.terms()) {
    for (std::size_t base = 0; base < geom.n_sites(); ++base) {
      BoundTerm bt;
      bt.term = &term;
      bt.sites.reserve(term.offsets.size());
      bool inside = true;
      for (const auto& off : term.offsets) {
        const auto idx = geom.index_of(add(geom.site(base), off));
        if (!idx) {
          inside = false;
          break;
        }
        bt.sites.push_back(*idx);
      }
      if (inside) out.push_back(std::move(bt));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> terms_by_site(
    const std::vector<BoundTerm>& bound, std::size_t n_sites) {
  std::vector<std::vector<std::size_t>> by_site(n_sites);
  for (std::size_t t = 0; t < bound.size(); ++t)
    for (const std::size_t s : bound[t].sites) by_site[s].push_back(t);
  return by_site;
}

namespace {

json body_to_json(const BodySpec& b) {
  json j;
  switch (b.kind) {
    case BodySpec::Kind::PairPower:
      j["kind"] = "pair_power";
      j["coeff"] = b.coeff;
      j["power"] = b.power;
      break;
    case BodySpec::Kind::PairCosine:
      j["kind"] = "pair_cosine";
      j["coeff"] = b.coeff;
      break;
    case BodySpec::Kind::Multinomial: {
      j["kind"] = "multinomial";
      json terms = json::array();
      for (const auto& m : b.mono)
        terms.push_back({{"coeff", m.coeff}, {"powers", m.powers}});
      j["terms"] = std::move(terms);
      break;
    }
  }
  return j;
}

BodySpec body_from_json(const json& j) {
  BodySpec b;
  const std::string kind = j.at("kind");
  if (kind == "pair_power") {
    b.kind = BodySpec::Kind::PairPower;
    b.coeff = j.at("coeff");
    b.power = j.at("power");
    if (b.power < 2 || b.power > 4)
      throw std::invalid_argument("pair_power: power must be in [2, 4]");
  } else if (kind == "pair_cosine") {
    b.kind = BodySpec::Kind::PairCosine;
    b.coeff = j.at("coeff");
  } else if (kind == "multinomial") {
    b.kind = BodySpec::Kind::Multinomial;
    for (const auto& t : j.at("terms")) {
      BodySpec::MonoTerm m;
      m.coeff = t.at("coeff");
      m.powers = t.at("powers").get<std::vector<int>>();
      b.mono.push_back(std::move(m));
    }
  } else {
    throw std::invalid_argument("unknown interaction body kind: " + kind);
  }
  return b;
}

}  // namespace

LatticeModel load_model_json(const std::string& text) {
  const json j = json::parse(text);
  const int nu = j.at("nu");
  const int site_dim = j.value("site_dim", 1);
  SpaceSpec space;
  const json& js = j.at("space");
  const std::string sk = js.at("kind");
  if (sk == "euclidean") {
    space.kind = SpaceSpec::Kind::Euclidean;
  } else if (sk == "torus") {
    space.kind = SpaceSpec::Kind::Torus;
    space.period = js.value("period", space.period);
    if (space.period <= 0) throw std::invalid_argument("torus period must be positive");
  } else {
    throw std::invalid_argument("unknown space kind: " + sk);
  }

  PotentialSpec onsite;
  const json& jo = j.at("onsite");
  const std::string ok = jo.at("kind");
  if (ok == "polynomial") {
    onsite.kind = PotentialSpec::Kind::Polynomial;
  } else if (ok == "cosine") {
    onsite.kind = PotentialSpec::Kind::Cosine;
  } else {
    throw std::invalid_argument("unknown onsite kind: " + ok);
  }
  onsite.coeffs = jo.at("coeffs").get<std::vector<double>>();

  std::vector<InteractionTerm> terms;
  for (const auto& jt : j.value("terms", json::array())) {
    InteractionTerm t;
    for (const auto& o : jt.at("offsets"))
      t.offsets.push_back(o.get<std::vector<int>>());
    t.body = body_from_json(jt.at("body"));
    terms.push_back(std::move(t));
  }
  return LatticeModel(nu, site_dim, space, std::move(onsite), std::move(terms),
                      j.at("range"), j.value("name", "model"));
}

LatticeModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_json(ss.str());
}

std::string LatticeModel::canonical_description() const {
  json j;
  j["nu"] = nu_;
  j["site_dim"] = site_dim_;
  j["space"] = {{"kind", space_.kind == SpaceSpec::Kind::Torus ? "torus" : "euclidean"}};
  if (space_.kind == SpaceSpec::Kind::Torus) j["space"]["period"] = space_.period;
  j["onsite"] = {
      {"kind", onsite_.kind == PotentialSpec::Kind::Polynomial ? "polynomial" : "cosine"},
      {"coeffs", onsite_.coeffs}};
  json terms = json::array();
  for (const auto& t : terms_) {
    json jt;
    jt["offsets"] = json::array();
    for (const auto& o : t.offsets) jt["offsets"].push_back(o);
    jt["body"] = body_to_json(t.body);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  j["range"] = range_;
  return j.dump();
}

std::string model_to_json(const LatticeModel& model) {
  json j = json::parse(model.canonical_description());
  j["name"] = model.name();
  return j.dump(2);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

InteractionTerm nn_pair(int nu, int axis, BodySpec body) {
  InteractionTerm t;
  t.offsets.emplace_back(nu, 0);
  Site e(nu, 0);
  e[axis] = 1;
  t.offsets.push_back(e);
  t.body = std::move(body);
  return t;
}

BodySpec pair_power(double c, int p) {
  BodySpec b;
  b.kind = BodySpec::Kind::PairPower;
  b.coeff = c;
  b.power = p;
  return b;
}

}  // namespace

LatticeModel make_harmonic_chain() {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5};  // 1/2 + q^2/2
  return LatticeModel(1, 1, SpaceSpec{}, onsite, {nn_pair(1, 0, pair_power(0.25, 2))},
                      1, "harmonic_chain");
}

LatticeModel make_fpu_chain() {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5, 0.0, 0.25};  // 1/2 + q^2/2 + q^4/4
  return LatticeModel(1, 1, SpaceSpec{}, onsite, {nn_pair(1, 0, pair_power(0.5, 2))},
                      1, "fpu_chain");
}

LatticeModel make_quartic_2d() {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5, 0.0, 0.25};
  std::vector<InteractionTerm> terms = {nn_pair(2, 0, pair_power(0.1, 2)),
                                        nn_pair(2, 1, pair_power(0.1, 2))};
  return LatticeModel(2, 1, SpaceSpec{}, onsite, std::move(terms), 1, "quartic_2d");
}

LatticeModel make_rotator_chain() {
  SpaceSpec space;
  space.kind = SpaceSpec::Kind::Torus;
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Cosine;
  onsite.coeffs = {1.0};  // 1 - cos(q)
  BodySpec b;
  b.kind = BodySpec::Kind::PairCosine;
  b.coeff = 0.5;
  return LatticeModel(1, 1, space, onsite, {nn_pair(1, 0, std::move(b))}, 1,
                      "rotator_chain");
}

}  // namespace lattice
