#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "lattice/kernels.hpp"
#include "lattice/rng.hpp"
#include "lattice/stats.hpp"

using namespace lattice;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * rng.gaussian();
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
  auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                   {0xffffffffu, 0xffffffffu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                   {0xa4093822u, 0x299f31d0u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("substreams: disjoint purposes give different draws, same key repeats") {
  Rng a(42, 7, Stream::InitQ);
  Rng b(42, 7, Stream::InitQ);
  Rng c(42, 7, Stream::InitP);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
}

TEST_CASE("gaussian moments are sane") {
  Rng rng(1, 0, Stream::Misc);
  const std::size_t n = 200000;
  double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    s1 += g;
    s2 += g * g;
  }
  CHECK(std::fabs(s1 / n) < 0.01);
  CHECK(std::fabs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("scalar and avx2 kernel variants agree bit for bit") {
  const KernelTable& s = scalar_kernels();
  const KernelTable* v = avx2_kernels();
  if (!v) {
    MESSAGE("avx2 not available on this host; equivalence suite skipped");
    return;
  }
  Rng rng(99, 0, Stream::Misc);
  const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 13, 16, 31, 64, 100, 1000, 4097};
  for (std::size_t n : sizes) {
    auto x = random_vec(rng, n, 2.0);
    auto y0 = random_vec(rng, n, 2.0);
    auto y1 = y0;

    s.axpy(y0.data(), x.data(), 0.37, n);
    v->axpy(y1.data(), x.data(), 0.37, n);
    CHECK(bit_equal(y0, y1));

    auto z0 = x, z1 = x;
    s.scale(z0.data(), -1.7, n);
    v->scale(z1.data(), -1.7, n);
    CHECK(bit_equal(z0, z1));

    auto w0 = random_vec(rng, n, 9.0);
    auto w1 = w0;
    s.wrap_torus(w0.data(), 6.28318530717958647692, n);
    v->wrap_torus(w1.data(), 6.28318530717958647692, n);
    CHECK(bit_equal(w0, w1));

    const double coeffs[] = {0.25, 0.0, 0.5, 0.0, 0.1};
    auto h0 = y0, h1 = y0;
    s.horner(h0.data(), x.data(), coeffs, 4, true, n);
    v->horner(h1.data(), x.data(), coeffs, 4, true, n);
    CHECK(bit_equal(h0, h1));
    s.horner(h0.data(), x.data(), coeffs, 4, false, n);
    v->horner(h1.data(), x.data(), coeffs, 4, false, n);
    CHECK(bit_equal(h0, h1));

    for (int power : {2, 3, 4}) {
      auto fi0 = random_vec(rng, n), fj0 = random_vec(rng, n);
      auto fi1 = fi0, fj1 = fj0;
      auto qi = random_vec(rng, n), qj = random_vec(rng, n);
      s.bond_force_pow(fi0.data(), fj0.data(), qi.data(), qj.data(), 0.25, power, n);
      v->bond_force_pow(fi1.data(), fj1.data(), qi.data(), qj.data(), 0.25, power, n);
      CHECK(bit_equal(fi0, fi1));
      CHECK(bit_equal(fj0, fj1));

      auto a0 = random_vec(rng, n);
      auto a1 = a0;
      s.bond_energy_pow(a0.data(), qi.data(), qj.data(), 0.25, power, n);
      v->bond_energy_pow(a1.data(), qi.data(), qj.data(), 0.25, power, n);
      CHECK(bit_equal(a0, a1));
    }

    auto k0 = random_vec(rng, n);
    auto k1 = k0;
    s.accum_half_sq(k0.data(), x.data(), n);
    v->accum_half_sq(k1.data(), x.data(), n);
    CHECK(bit_equal(k0, k1));

    CHECK(s.sum_pairwise(x.data(), n) == v->sum_pairwise(x.data(), n));
    CHECK(s.max_abs(x.data(), n) == v->max_abs(x.data(), n));
    CHECK(s.max_abs_diff(x.data(), y0.data(), n) == v->max_abs_diff(x.data(), y0.data(), n));
  }

  // sqdist over transposed blocks
  for (std::size_t m : {1u, 4u, 31u, 32u, 33u}) {
    for (std::size_t dim : {1u, 2u, 4u, 8u, 12u}) {
      auto pts = random_vec(rng, dim * m);
      auto q = random_vec(rng, dim);
      std::vector<double> o0(m), o1(m);
      s.sqdist_block(o0.data(), q.data(), pts.data(), dim, m);
      v->sqdist_block(o1.data(), q.data(), pts.data(), dim, m);
      CHECK(bit_equal(o0, o1));
    }
  }
}

TEST_CASE("pairwise sum is accurate and order-fixed") {
  Rng rng(5, 0, Stream::Misc);
  auto x = random_vec(rng, 100001, 1.0);
  long double ref = 0.0L;
  for (double v : x) ref += v;
  const double got = scalar_kernels().sum_pairwise(x.data(), x.size());
  CHECK(std::fabs(static_cast<double>(ref) - got) <
        1e-10 * std::max(1.0, std::fabs(static_cast<double>(ref))));

  // explicit small-tree value: ((1+2)+(3+4))+5
  const double small[] = {1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(scalar_kernels().sum_pairwise(small, 5) == 15.0);
}

TEST_CASE("wrap_torus lands in [0, period)") {
  Rng rng(6, 0, Stream::Misc);
  auto x = random_vec(rng, 1000, 50.0);
  const double period = 6.283185307179586;
  scalar_kernels().wrap_torus(x.data(), period, x.size());
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v < period);
  }
}

TEST_CASE("stats helpers") {
  std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  CHECK(stats::mean(xs) == doctest::Approx(2.5));
  auto me = stats::mean_stderr(xs);
  CHECK(me.value == doctest::Approx(2.5));
  CHECK(me.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));

  // digamma(1) = -gamma, digamma(2) = 1 - gamma
  CHECK(stats::digamma_int(1) == doctest::Approx(-0.5772156649).epsilon(1e-9));
  CHECK(stats::digamma_int(2) == doctest::Approx(1 - 0.5772156649).epsilon(1e-9));

  // unit ball volumes: d=1 -> 2, d=2 -> pi, d=3 -> 4pi/3
  CHECK(stats::unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(stats::unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(stats::unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));

  // Gauss-Legendre integrates x^4 on [-1, 1] exactly with n >= 3
  auto q = stats::gauss_legendre(6, -1.0, 1.0);
  double acc = 0;
  for (int i = 0; i < 6; ++i) acc += q.weights[i] * std::pow(q.nodes[i], 4);
  CHECK(acc == doctest::Approx(0.4).epsilon(1e-12));

  // KS on identical large samples is ~0; on shifted samples it is large
  Rng rng(7, 0, Stream::Misc);
  std::vector<double> a(2000), b(2000), c(2000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.gaussian();
    b[i] = rng.gaussian();
    c[i] = rng.gaussian() + 3.0;
  }
  CHECK(stats::ks_statistic(a, b) < stats::ks_critical(a.size(), b.size(), 0.01));
  CHECK(stats::ks_statistic(a, c) > stats::ks_critical(a.size(), c.size(), 0.01));
}
