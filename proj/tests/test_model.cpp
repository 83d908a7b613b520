#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lattice/assumptions.hpp"
#include "lattice/model.hpp"
#include "lattice/rng.hpp"

using namespace lattice;

namespace {

LatticeModel nn_pair_model(int nu, double coeff = 0.25) {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5};
  std::vector<InteractionTerm> terms;
  for (int axis = 0; axis < nu; ++axis) {
    InteractionTerm t;
    t.offsets.emplace_back(nu, 0);
    Site e(nu, 0);
    e[axis] = 1;
    t.offsets.push_back(e);
    t.body.kind = BodySpec::Kind::PairPower;
    t.body.coeff = coeff;
    t.body.power = 2;
    terms.push_back(t);
  }
  return LatticeModel(nu, 1, SpaceSpec{}, onsite, terms, 1);
}

LatticeModel onsite_only_model(int nu = 1) {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.0, 0.0, 0.5};
  return LatticeModel(nu, 1, SpaceSpec{}, onsite, {}, 1);
}

LatticeModel range2_chain() {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5};
  std::vector<InteractionTerm> terms;
  for (int reach : {1, 2}) {
    InteractionTerm t;
    t.offsets.push_back({0});
    t.offsets.push_back({reach});
    t.body.kind = BodySpec::Kind::PairPower;
    t.body.coeff = 0.1;
    t.body.power = 2;
    terms.push_back(t);
  }
  return LatticeModel(1, 1, SpaceSpec{}, onsite, terms, 2);
}

}  // namespace

TEST_CASE("box enumeration: (-a, a]^nu in lexicographic order") {
  BoxGeometry g1(1, 2);
  REQUIRE(g1.n_sites() == 4);
  CHECK(g1.site(0) == Site{-1});
  CHECK(g1.site(1) == Site{0});
  CHECK(g1.site(2) == Site{1});
  CHECK(g1.site(3) == Site{2});

  BoxGeometry g2(2, 1);
  REQUIRE(g2.n_sites() == 4);
  CHECK(g2.site(0) == Site{0, 0});
  CHECK(g2.site(1) == Site{0, 1});
  CHECK(g2.site(2) == Site{1, 0});
  CHECK(g2.site(3) == Site{1, 1});

  CHECK(BoxGeometry(3, 2).n_sites() == 64);

  // cardinality 2^nu a^nu across a sweep
  for (int a = 1; a <= 5; ++a)
    CHECK(BoxGeometry(2, a).n_sites() ==
          static_cast<std::size_t>(4 * a * a));

  CHECK_THROWS(BoxGeometry(1, 0));

  // index_of inverts enumeration
  BoxGeometry g(2, 3);
  for (std::size_t k = 0; k < g.n_sites(); ++k)
    CHECK(*g.index_of(g.site(k)) == k);
  CHECK(!g.index_of(Site{-3, 0}).has_value());
  CHECK(!g.index_of(Site{4, 0}).has_value());
}

TEST_CASE("gamma distance: nearest-neighbor family is l1") {
  auto m = nn_pair_model(2);
  CHECK(m.gamma(Site{0, 0}, Site{2, 1}) == 3);
  CHECK(m.gamma(Site{0, 0}, Site{0, 0}) == 0);
  CHECK(m.gamma(Site{1, -1}, Site{1, -1}) == 0);
  // symmetry and triangle inequality over sampled triples
  Rng rng(31, 0, Stream::Misc);
  for (int it = 0; it < 40; ++it) {
    Site a{int(rng.below(7)) - 3, int(rng.below(7)) - 3};
    Site b{int(rng.below(7)) - 3, int(rng.below(7)) - 3};
    Site c{int(rng.below(7)) - 3, int(rng.below(7)) - 3};
    const int ab = m.gamma(a, b), ba = m.gamma(b, a);
    CHECK(ab == ba);
    CHECK(ab <= m.gamma(a, c) + m.gamma(c, b));
  }
}

TEST_CASE("gamma distance: disconnected and finite-range properties") {
  auto m0 = onsite_only_model();
  CHECK(m0.gamma(Site{0}, Site{1}) == kGammaInfinite);

  // gamma(i, j) > 1 whenever linf(i - j) > D
  auto m = range2_chain();
  CHECK(m.range() == 2);
  for (int delta = 3; delta <= 6; ++delta)
    CHECK(m.gamma(Site{0}, Site{delta}) > 1);
  CHECK(m.gamma(Site{0}, Site{2}) == 1);
  CHECK(m.gamma(Site{0}, Site{3}) == 2);
}

TEST_CASE("interior boundary") {
  auto nn = nn_pair_model(1);
  BoxGeometry g(1, 3);  // sites -2..3
  auto b = nn.interior_boundary(g);
  std::set<Site> sites;
  for (auto k : b) sites.insert(g.site(k));
  CHECK(sites == std::set<Site>{Site{-2}, Site{3}});

  auto r2 = range2_chain();
  b = r2.interior_boundary(g);
  sites.clear();
  for (auto k : b) sites.insert(g.site(k));
  CHECK(sites == std::set<Site>{Site{-2}, Site{-1}, Site{2}, Site{3}});

  // no multi-body terms: no site interacts with the outside
  CHECK(onsite_only_model().interior_boundary(g).empty());
}

TEST_CASE("boundary fraction shrinks with the box") {
  for (int nu : {1, 2}) {
    auto m = nn_pair_model(nu);
    BoxGeometry g2(nu, 2), g4(nu, 4);
    const double r2 = double(m.interior_boundary(g2).size()) / g2.n_sites();
    const double r4 = double(m.interior_boundary(g4).size()) / g4.n_sites();
    CHECK(r4 < r2);
  }
}

TEST_CASE("term canonicalization and finite-range validation") {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5};

  InteractionTerm t;
  t.offsets.push_back({5});
  t.offsets.push_back({4});  // min-lex is 4: canonical offsets {0}, {1}
  t.body.kind = BodySpec::Kind::PairPower;
  t.body.coeff = 1.0;
  t.body.power = 2;
  LatticeModel m(1, 1, SpaceSpec{}, onsite, {t}, 1);
  CHECK(m.terms()[0].offsets[0] == Site{0});
  CHECK(m.terms()[0].offsets[1] == Site{1});

  InteractionTerm wide;
  wide.offsets.push_back({0});
  wide.offsets.push_back({3});
  wide.body = t.body;
  CHECK_THROWS(LatticeModel(1, 1, SpaceSpec{}, onsite, {wide}, 1));

  InteractionTerm dup;
  dup.offsets.push_back({0});
  dup.offsets.push_back({0});
  dup.body = t.body;
  CHECK_THROWS(LatticeModel(1, 1, SpaceSpec{}, onsite, {dup}, 1));

  // odd-degree on-site polynomial is rejected
  PotentialSpec bad = onsite;
  bad.coeffs = {0.0, 0.0, 0.0, 1.0};
  CHECK_THROWS(LatticeModel(1, 1, SpaceSpec{}, bad, {}, 1));

  // cosine on-site requires the torus
  PotentialSpec cosv;
  cosv.kind = PotentialSpec::Kind::Cosine;
  cosv.coeffs = {1.0};
  CHECK_THROWS(LatticeModel(1, 1, SpaceSpec{}, cosv, {}, 1));
}

TEST_CASE("multinomial canonicalization permutes exponents with offsets") {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5, 0.0, 0.25};
  InteractionTerm t;
  t.offsets.push_back({2});
  t.offsets.push_back({1});
  t.offsets.push_back({3});
  t.body.kind = BodySpec::Kind::Multinomial;
  t.body.mono.push_back({0.1, {3, 1, 2}});  // q_{+2}^3 q_{+1} q_{+3}^2
  LatticeModel m(1, 1, SpaceSpec{}, onsite, {t}, 2);
  const auto& ct = m.terms()[0];
  CHECK(ct.offsets == std::vector<Site>{Site{0}, Site{1}, Site{2}});
  CHECK(ct.body.mono[0].powers == std::vector<int>{1, 3, 2});

  // value agrees with the uncanonicalized expression
  const double q1 = 0.7, q2 = -0.3, q3 = 1.1;
  const double local[3] = {q1, q2, q3};  // coords of offsets 1,2,3
  CHECK(ct.body.value(local) ==
        doctest::Approx(0.1 * q2 * q2 * q2 * q1 * q3 * q3));
}

TEST_CASE("model json round trip and hash stability") {
  auto m = make_fpu_chain();
  const std::string js = model_to_json(m);
  auto m2 = load_model_json(js);
  CHECK(m2.hash() == m.hash());
  CHECK(m2.nu() == m.nu());
  CHECK(m2.terms().size() == m.terms().size());

  auto mh = make_harmonic_chain();
  CHECK(mh.hash() != m.hash());

  CHECK_THROWS(load_model_json("{\"nu\": 1}"));
  // loader rejects offsets beyond the declared range
  CHECK_THROWS(load_model_json(R"({
    "nu": 1, "site_dim": 1, "space": {"kind": "euclidean"},
    "onsite": {"kind": "polynomial", "coeffs": [0.0, 0.0, 0.5]},
    "terms": [{"offsets": [[0],[2]],
               "body": {"kind": "pair_power", "coeff": 0.1, "power": 2}}],
    "range": 1})"));
}

TEST_CASE("assumption validation: harmonic chain passes with finite constants") {
  auto rep = validate_assumptions(make_harmonic_chain(), ProbePlan{});
  CHECK(rep.all_pass);
  CHECK(rep.C1 > 0);
  CHECK(rep.C1 < 1e3);
  CHECK(rep.C0 > 0);
  CHECK(rep.find("P1")->pass);
  CHECK(rep.find("D1")->pass);
  CHECK(rep.find("ss-like")->pass);
  CHECK(rep.ss_epsilon == doctest::Approx(1.0));  // nonnegative pair potential
  CHECK(rep.provenance == "sampled, not proven");
}

TEST_CASE("assumption validation: negative on-site potential fails P1") {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {-5.0, 0.0, 1.0};  // q^2 - 5
  LatticeModel m(1, 1, SpaceSpec{}, onsite, {}, 1);
  auto rep = validate_assumptions(m, ProbePlan{});
  CHECK(!rep.find("P1")->pass);
  CHECK(rep.find("P1")->constant == doctest::Approx(-5.0));
  CHECK(!rep.all_pass);
}

TEST_CASE("assumption validation: rotator model trivially passes P2/P3") {
  auto rep = validate_assumptions(make_rotator_chain(), ProbePlan{});
  CHECK(rep.all_pass);
  CHECK(rep.find("P2")->trivial);
  CHECK(rep.find("P3")->trivial);
}

TEST_CASE("assumption validation: fpu and 2d quartic pass; degree rule holds") {
  for (auto m : {make_fpu_chain(), make_quartic_2d()}) {
    auto rep = validate_assumptions(m, ProbePlan{});
    CHECK(rep.all_pass);
    CHECK(rep.find("degree")->pass);  // pair degree 2 <= n+1 = 3
  }
}
