#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lattice/dynamics.hpp"
#include "lattice/kernels.hpp"
#include "lattice/model.hpp"
#include "lattice/rng.hpp"
#include "oracles.hpp"

using namespace lattice;

namespace {

LatticeModel bare_harmonic_site() {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.0, 0.0, 0.5};  // q^2/2
  return LatticeModel(1, 1, SpaceSpec{}, onsite, {}, 1);
}

LatticeModel two_site_chain(double pair_coeff) {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.0, 0.0, 0.5};
  InteractionTerm t;
  t.offsets.push_back({0});
  t.offsets.push_back({1});
  t.body.kind = BodySpec::Kind::PairPower;
  t.body.coeff = pair_coeff;
  t.body.power = 2;
  return LatticeModel(1, 1, SpaceSpec{}, onsite, {t}, 1);
}

LatticeModel zero_force_model() {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.0};
  return LatticeModel(1, 1, SpaceSpec{}, onsite, {}, 1);
}

Configuration random_config(const LatticeModel& m, int a, std::uint64_t seed,
                            double amp = 0.6) {
  auto geom = std::make_shared<BoxGeometry>(m.nu(), a);
  Configuration c = Configuration::zeros(geom, m.site_dim());
  Rng rng(seed, 0, Stream::InitQ);
  for (auto& v : c.q) v = amp * rng.gaussian();
  for (auto& v : c.p) v = amp * rng.gaussian();
  return c;
}

}  // namespace

TEST_CASE("force: single site, on-site q^2/2 at q=3") {
  auto m = bare_harmonic_site();
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  Configuration c = Configuration::zeros(geom, 1);
  c.q[*geom->index_of(Site{0})] = 3.0;
  CHECK(force(m, c, Site{0})[0] == doctest::Approx(-3.0));
}

TEST_CASE("force: 2-site chain with pair (q0-q1)^2/2") {
  auto m = two_site_chain(0.5);
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  Configuration c = Configuration::zeros(geom, 1);
  c.q[*geom->index_of(Site{0})] = 1.0;
  c.q[*geom->index_of(Site{1})] = 0.0;
  CHECK(force(m, c, Site{0})[0] == doctest::Approx(-2.0));
}

TEST_CASE("force: severed boundary site feels no outside pair") {
  // In a 2-site box with nearest-neighbor pairs, site 1 only couples to site 0;
  // the pair to site 2 is cut. Equal q on both sites => zero pair force.
  auto m = two_site_chain(0.25);
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  Configuration c = Configuration::zeros(geom, 1);
  c.q[0] = 0.8;
  c.q[1] = 0.8;
  CHECK(force(m, c, Site{1})[0] == doctest::Approx(-0.8));  // on-site only
}

TEST_CASE("force matches a finite-difference gradient of the severed potential") {
  auto m = make_fpu_chain();
  Configuration c = random_config(m, 3, 7);
  ForcePlan plan(m, *c.geom);
  auto grad = oracles::fd_gradient(
      [&](const std::vector<double>& q) {
        Configuration t = c;
        t.q = q;
        return plan.potential_value(t);
      },
      c.q, 1e-6);
  for (std::size_t k = 0; k < c.n_coords(); ++k) {
    const auto f = force(m, c, c.geom->site(k));
    CHECK(f[0] == doctest::Approx(-grad[k]).epsilon(1e-6));
  }
}

TEST_CASE("verlet step: q' = 1 - h^2/2 on the unit oscillator") {
  auto m = bare_harmonic_site();
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  Ensemble e(geom, 1, 1);
  e.q_row(*geom->index_of(Site{0}))[0] = 1.0;
  ForcePlan plan(m, *geom);
  const double h = 0.01;
  step(plan, e, h);
  CHECK(e.q_row(*geom->index_of(Site{0}))[0] == doctest::Approx(1.0 - h * h / 2).epsilon(1e-12));
}

TEST_CASE("zero-force model: free drift") {
  auto m = zero_force_model();
  auto geom = std::make_shared<BoxGeometry>(1, 2);
  Configuration c = Configuration::zeros(geom, 1);
  for (std::size_t k = 0; k < c.q.size(); ++k) {
    c.q[k] = 0.1 * k;
    c.p[k] = 1.0 + k;
  }
  Configuration c0 = c;
  evolve(m, c, IntegratorSchedule{1e-2, 0.5});
  for (std::size_t k = 0; k < c.q.size(); ++k) {
    CHECK(c.q[k] == doctest::Approx(c0.q[k] + 0.5 * c0.p[k]).epsilon(1e-12));
    CHECK(c.p[k] == doctest::Approx(c0.p[k]));
  }
}

TEST_CASE("oscillator reaches cos(10) after t=10 at h=1e-3") {
  auto m = bare_harmonic_site();
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  Configuration c = Configuration::zeros(geom, 1);
  const std::size_t at = *geom->index_of(Site{0});
  c.q[at] = 1.0;
  evolve(m, c, IntegratorSchedule{1e-3, 10.0});
  CHECK(std::fabs(c.q[at] - std::cos(10.0)) < 1e-4);
}

TEST_CASE("evolve with t_end = 0 is the identity") {
  auto m = make_harmonic_chain();
  Configuration c = random_config(m, 4, 3);
  Configuration c0 = c;
  evolve(m, c, IntegratorSchedule{1e-3, 0.0});
  CHECK(c.q == c0.q);
  CHECK(c.p == c0.p);
}

TEST_CASE("severed energy drift is O(h^2): halving h quarters the drift") {
  auto m = make_fpu_chain();
  auto drift_at = [&](double h) {
    Configuration c = random_config(m, 4, 11);
    const double h0 = box_total_energy(m, c);
    evolve(m, c, IntegratorSchedule{h, 2.0});
    return std::fabs(box_total_energy(m, c) - h0);
  };
  const double d1 = drift_at(2e-3);
  const double d2 = drift_at(1e-3);
  const double ratio = d1 / d2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("time reversal: involution and round trip") {
  auto m = make_fpu_chain();
  Configuration c = random_config(m, 4, 13);

  Configuration twice = c;
  time_reverse(twice);
  time_reverse(twice);
  CHECK(twice.q == c.q);
  CHECK(twice.p == c.p);

  // theta o evolve(t) o theta o evolve(t) = identity up to roundoff
  Configuration r = c;
  const IntegratorSchedule sched{1e-3, 1.0};
  evolve(m, r, sched);
  time_reverse(r);
  evolve(m, r, sched);
  time_reverse(r);
  double err = 0;
  for (std::size_t k = 0; k < c.n_coords(); ++k)
    err = std::max(err, std::max(std::fabs(r.q[k] - c.q[k]),
                                 std::fabs(r.p[k] - c.p[k])));
  CHECK(err < 1e-8);
}

TEST_CASE("one-step jacobian determinant is 1 (volume preservation)") {
  auto m = two_site_chain(0.25);
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  ForcePlan plan(m, *geom);
  const double h = 1e-2;
  auto map = [&](const std::vector<double>& x) {
    Ensemble e(geom, 1, 1);
    e.q_row(0)[0] = x[0];
    e.q_row(1)[0] = x[1];
    e.p_row(0)[0] = x[2];
    e.p_row(1)[0] = x[3];
    step(plan, e, h);
    return std::vector<double>{e.q_row(0)[0], e.q_row(1)[0], e.p_row(0)[0],
                               e.p_row(1)[0]};
  };
  auto j = oracles::fd_jacobian(map, {0.3, -0.2, 0.5, 0.1}, 1e-5);
  // 4x4 determinant by cofactor-free Gaussian elimination
  double a[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a[r][c] = j[r][c];
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (piv != c) {
      for (int k = 0; k < 4; ++k) std::swap(a[piv][k], a[c][k]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  CHECK(std::fabs(det - 1.0) < 1e-6);
}

TEST_CASE("blow-up tripwire reports the offending site") {
  auto m = bare_harmonic_site();
  auto geom = std::make_shared<BoxGeometry>(1, 1);
  Ensemble e(geom, 1, 1);
  e.p_row(0)[0] = 3e6;  // kinetic energy above the default ceiling
  CHECK_THROWS_AS(evolve(m, e, IntegratorSchedule{1e-3, 0.5}), BlowupError);
}

TEST_CASE("torus drift wraps positions into [0, period)") {
  auto m = make_rotator_chain();
  auto geom = std::make_shared<BoxGeometry>(1, 2);
  Ensemble e(geom, 1, 1);
  for (std::size_t r = 0; r < e.n_coords(); ++r) {
    e.q_row(r)[0] = 6.0;
    e.p_row(r)[0] = 2.0;
  }
  evolve(m, e, IntegratorSchedule{1e-2, 2.0});
  for (std::size_t r = 0; r < e.n_coords(); ++r) {
    CHECK(e.q_row(r)[0] >= 0.0);
    CHECK(e.q_row(r)[0] < m.space().period);
  }
}

TEST_CASE("poisson bracket {E_0, H}") {
  auto m = two_site_chain(0.3);
  auto geom = std::make_shared<BoxGeometry>(1, 1);

  // p == 0: every term carries one momentum factor
  Configuration c = Configuration::zeros(geom, 1);
  c.q[0] = 1.2;
  c.q[1] = -0.4;
  CHECK(poisson_bracket_E0_H(m, c, Site{0}) == doctest::Approx(0.0));

  // no multi-body terms: empty sum
  auto m0 = bare_harmonic_site();
  Configuration c0 = Configuration::zeros(geom, 1);
  c0.q = {1.0, 2.0};
  c0.p = {0.7, -0.3};
  CHECK(poisson_bracket_E0_H(m0, c0, Site{0}) == doctest::Approx(0.0));

  // 2-site pair model, (q,p) = ((1,0),(0,1)): compare with a finite-difference
  // oracle of the defining formula sum_D (-p_0 dW/dq_0 + (1/#D) sum p_x dW/dq_x)
  Configuration c2 = Configuration::zeros(geom, 1);
  const std::size_t i0 = *geom->index_of(Site{0});
  const std::size_t i1 = *geom->index_of(Site{1});
  c2.q[i0] = 1.0;
  c2.q[i1] = 0.0;
  c2.p[i0] = 0.0;
  c2.p[i1] = 1.0;
  const double coeff = 0.3;
  auto w_pair = [&](const std::vector<double>& q) {
    const double d = q[i0] - q[i1];
    return coeff * d * d;
  };
  auto g = oracles::fd_gradient(w_pair, c2.q, 1e-6);
  const double expected =
      -c2.p[i0] * g[i0] + 0.5 * (c2.p[i0] * g[i0] + c2.p[i1] * g[i1]);
  CHECK(poisson_bracket_E0_H(m, c2, Site{0}) ==
        doctest::Approx(expected).epsilon(1e-7));
  // hand expansion: dW/dq1 = -2c(q0-q1) = -0.6, bracket = (1/2)(1*(-0.6)) = -0.3
  CHECK(poisson_bracket_E0_H(m, c2, Site{0}) == doctest::Approx(-0.3));

  // box too small: a range-2 pair family has no translate containing the
  // center that fits in a 2-site box
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.0, 0.0, 0.5};
  InteractionTerm far_pair;
  far_pair.offsets.push_back({0});
  far_pair.offsets.push_back({2});
  far_pair.body.kind = BodySpec::Kind::PairPower;
  far_pair.body.coeff = 0.1;
  far_pair.body.power = 2;
  LatticeModel wide(1, 1, SpaceSpec{}, onsite, {far_pair}, 2);
  CHECK_THROWS(poisson_bracket_E0_H(wide, c2, Site{0}));
}

TEST_CASE("translation covariance of bound terms") {
  // evaluating a term anchored at i on x equals evaluating the canonical body
  // on the translated coordinates
  auto m = make_fpu_chain();
  auto geom = std::make_shared<BoxGeometry>(1, 4);
  Configuration c = random_config(m, 4, 17);
  ForcePlan plan(m, *geom);
  const auto& bound = plan.bound_terms();
  for (const auto& bt : bound) {
    double local[2] = {c.q[bt.sites[0]], c.q[bt.sites[1]]};
    const double direct = bt.term->body.value(local);
    // translated evaluation: shift coordinates so the anchor sits at 0
    const double d = c.q[bt.sites[0]] - c.q[bt.sites[1]];
    CHECK(direct == doctest::Approx(0.5 * d * d));
  }
}

TEST_CASE("arity-3 multinomial forces match the finite-difference oracle") {
  PotentialSpec onsite;
  onsite.kind = PotentialSpec::Kind::Polynomial;
  onsite.coeffs = {0.5, 0.0, 0.5, 0.0, 0.25};
  InteractionTerm t;
  t.offsets.push_back({0});
  t.offsets.push_back({1});
  t.offsets.push_back({2});
  t.body.kind = BodySpec::Kind::Multinomial;
  t.body.mono.push_back({0.05, {1, 1, 1}});
  LatticeModel m(1, 1, SpaceSpec{}, onsite, {t}, 2);

  Configuration c = random_config(m, 3, 23);
  ForcePlan plan(m, *c.geom);
  auto grad = oracles::fd_gradient(
      [&](const std::vector<double>& q) {
        Configuration tmp = c;
        tmp.q = q;
        return plan.potential_value(tmp);
      },
      c.q, 1e-6);
  for (std::size_t k = 0; k < c.n_coords(); ++k)
    CHECK(force(m, c, c.geom->site(k))[0] ==
          doctest::Approx(-grad[k]).epsilon(1e-6));

  // the 1/#Delta weighting shows up in the bracket: nontrivial value
  Configuration cb = random_config(m, 3, 29);
  const double bracket = poisson_bracket_E0_H(m, cb, Site{0});
  CHECK(std::fabs(bracket) > 1e-6);
}
