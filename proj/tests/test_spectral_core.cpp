#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "paraairy/field.hpp"
#include "paraairy/grid.hpp"
#include "paraairy/lp.hpp"
#include "paraairy/rng.hpp"

using namespace paraairy;

namespace {

SpectralField random_field(const GridPtr& g, Rng& rng) {
  SpectralField u(g);
  for (auto& c : u.coef()) c = Complex(rng.normal(), rng.normal());
  return u;
}

SpectralField random_band_field(const LpCalculus& lp, int j, Rng& rng) {
  return lp.project_band(random_field(lp.grid(), rng), j);
}

SpectralField pure_mode(const GridPtr& g, int mode, Complex amp = Complex(1.0, 0.0)) {
  SpectralField u(g);
  const int idx = mode >= 0 ? mode : mode + g->n();
  u.coef()[idx] = amp;
  return u;
}

// Sharp truncation to |xi| <= cut; "band-limited" in the identity checks
// means support inside the region where the dyadic partition sums to 1.
SpectralField sharp_cut(const SpectralField& u, double cut) {
  SpectralField out = u;
  for (int i = 0; i < u.grid()->n(); ++i)
    if (std::abs(u.grid()->xi(i)) > cut) out.coef()[i] = Complex(0.0, 0.0);
  return out;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.coef().size(); ++i) {
    num += std::norm(a.coef()[i] - b.coef()[i]);
    den += std::norm(a.coef()[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace

TEST_CASE("fft matches direct dft on a small grid") {
  auto g = make_grid(32, 8.0);
  Rng rng(7);
  std::vector<Complex> s(32);
  for (auto& v : s) v = Complex(rng.normal(), rng.normal());
  const auto u = SpectralField::from_samples(g, s);
  // Direct evaluation of u(x_i) = sum_m c_m e^{i xi_m x_i}.
  for (int i = 0; i < g->n(); i += 5) {
    Complex acc(0.0, 0.0);
    for (int m = 0; m < g->n(); ++m) {
      const double phase = g->xi(m) * g->x(i);
      acc += u.coef()[m] * Complex(std::cos(phase), std::sin(phase));
    }
    CHECK(std::abs(acc - s[i]) < 1e-11);
  }
}

TEST_CASE("space-frequency round trip is exact to 1e-12") {
  auto g = make_grid(512, 64.0);
  Rng rng(11);
  std::vector<Complex> s(512);
  for (auto& v : s) v = Complex(rng.normal(), rng.normal());
  const auto u = SpectralField::from_samples(g, s);
  const auto back = u.samples();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 512; ++i) {
    num += std::norm(back[i] - s[i]);
    den += std::norm(s[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("transforms preserve the l2 norm (Parseval)") {
  auto g = make_grid(256, 16.0);
  Rng rng(13);
  std::vector<Complex> s(256);
  for (auto& v : s) v = Complex(rng.normal(), rng.normal());
  double direct = 0.0;
  for (const auto& v : s) direct += std::norm(v);
  direct = std::sqrt(direct * g->dx());
  const auto u = SpectralField::from_samples(g, s);
  CHECK(u.l2_norm() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("lp_symbol basic values") {
  CHECK(lp_symbol(0, 0.5) == 1.0);
  CHECK(lp_symbol(0, 3.0) == 0.0);
  CHECK(lp_symbol(3, 8.0) == 1.0);  // phi0(1) - phi0(2)
  for (double xi : {0.1, 1.3, 2.0, 5.7, 100.0}) {
    for (int j = 0; j < 8; ++j) {
      const double v = lp_symbol(j, xi);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("partition of unity on resolved frequencies") {
  auto g = make_grid(4096, 64.0);
  LpCalculus lp(g);
  const double cutoff = std::ldexp(1.0, g->j_max());
  for (int i = 0; i < g->n(); ++i) {
    const double xi = g->xi(i);
    if (std::abs(xi) > cutoff) continue;
    double sum = 0.0;
    for (int j = 0; j <= g->j_max(); ++j) sum += lp.band_symbol(j)[i];
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("project_band on pure modes and constants") {
  // L = 32 pi makes every dyadic frequency 2^j = 2 pi (2^j 16) / L an exact
  // grid mode, sitting on the one-point plateau where phi_j = 1.
  auto g = make_grid(1024, 32.0 * std::numbers::pi);
  LpCalculus lp(g);
  REQUIRE(g->j_max() == 4);
  for (int j = 2; j <= 4; ++j) {
    const int m = (1 << j) * 16;
    const double xi = 2.0 * std::numbers::pi * m / g->length();
    REQUIRE(lp_symbol(j, xi) == 1.0);
    const auto u = pure_mode(g, m);
    CHECK(rel_diff(lp.project_band(u, j), u) == 0.0);
  }
  const auto c = pure_mode(g, 0, Complex(2.5, -1.0));
  for (int j = 1; j <= g->j_max(); ++j)
    CHECK(lp.project_band(c, j).l2_norm() == 0.0);
}

TEST_CASE("telescoping band sum reproduces band-limited fields") {
  auto g = make_grid(1024, 32.0);
  LpCalculus lp(g);
  Rng rng(17);
  const auto u = sharp_cut(random_field(g, rng), std::ldexp(1.0, g->j_max()));
  SpectralField sum(g);
  for (int j = 0; j <= g->j_max(); ++j) sum += lp.project_band(u, j);
  CHECK(rel_diff(sum, u) < 1e-12);
}

TEST_CASE("project_below basics and partition identity") {
  auto g = make_grid(1024, 32.0);
  LpCalculus lp(g);
  Rng rng(19);
  const auto u = random_field(g, rng);
  CHECK(lp.project_below(u, 0).l2_norm() == 0.0);
  CHECK(lp.project_below(u, -3).l2_norm() == 0.0);
  const auto c = pure_mode(g, 0, Complex(0.7, 0.3));
  CHECK(rel_diff(lp.project_below(c, 1), c) == 0.0);
  // S_{<j} u + sum_{k>=j} S_k u = u below the partition cutoff.
  const auto ur = sharp_cut(u, std::ldexp(1.0, g->j_max()));
  for (int j : {1, 3, 5}) {
    SpectralField sum = lp.project_below(ur, j);
    for (int k = j; k <= g->j_max(); ++k) sum += lp.project_band(ur, k);
    CHECK(rel_diff(sum, ur) < 1e-12);
  }
}

TEST_CASE("widened projector identities") {
  auto g = make_grid(1024, 32.0);
  LpCalculus lp(g);
  Rng rng(23);
  for (int j = 0; j <= g->j_max(); ++j) {
    // S_j tilde_S_j = tilde_S_j S_j = S_j exactly as multiplier tables.
    for (int i = 0; i < g->n(); ++i) {
      const double b = lp.band_symbol(j)[i];
      const double w = lp.wide_symbol(j)[i];
      CHECK(b * w == b);
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int j = 1 + static_cast<int>(rng.uniform() * g->j_max());
    const auto u = random_field(g, rng);
    const auto bj = lp.project_band(u, j);
    CHECK(rel_diff(lp.project_wide(bj, j), bj) < 1e-12);
  }
  // A mode at frequency 2^(j+3) lies outside the widened annulus.
  auto g2 = make_grid(1024, 32.0 * std::numbers::pi);
  LpCalculus lp2(g2);
  const int j = 2;
  const int m = (1 << (j + 3)) * 16;
  CHECK(lp2.project_wide(pure_mode(g2, m), j).l2_norm() == 0.0);
}

TEST_CASE("derivative on modes, constants, and composition") {
  auto g = make_grid(512, 16.0);
  const int m = 20;
  const double xi = 2.0 * std::numbers::pi * m / g->length();
  const auto u = pure_mode(g, m);
  const auto d2 = derivative(u, 2);
  CHECK(std::abs(d2.coef()[m] - Complex(-xi * xi, 0.0)) < 1e-12 * xi * xi);
  const auto c = pure_mode(g, 0, Complex(1.0, 2.0));
  for (int order : {1, 2, 3}) CHECK(derivative(c, order).l2_norm() == 0.0);
  Rng rng(29);
  const auto r = random_field(g, rng);
  CHECK(rel_diff(derivative(derivative(r, 1), 2), derivative(r, 3)) < 1e-12);
  CHECK_THROWS(derivative(r, 4));
}

TEST_CASE("paraproduct with constant low factor and band-limited inputs") {
  auto g = make_grid(4096, 32.0);  // j_max = 7 so bands above 4 exist
  LpCalculus lp(g);
  REQUIRE(g->j_max() >= 6);
  Rng rng(31);
  const auto u = lp.project_resolved(random_field(g, rng));
  const int steps = 2;
  const auto ust = constant_in_time(u, steps);

  // a constant: T_a u = c * S_{>=5} u.
  const Complex cval(1.25, -0.5);
  const auto a = constant_in_time(pure_mode(g, 0, cval), steps);
  const auto t = paraproduct(lp, a, ust);
  SpectralField expect(g);
  for (int j = 5; j <= g->j_max(); ++j) expect += lp.project_band(u, j);
  expect *= cval;
  CHECK(rel_diff(t.slice(0), expect) < 1e-12);

  // u with support below 2^4 (so S_j u = 0 for every j >= 5) gives zero.
  const auto lowu = sharp_cut(u, 16.0);
  const auto t2 = paraproduct(lp, constant_in_time(random_field(g, rng), steps),
                              constant_in_time(lowu, steps));
  CHECK(t2.slice(0).l2_norm() < 1e-12 * u.l2_norm());

  // a = 0 gives zero.
  const auto t3 = paraproduct(lp, SpaceTimeField(g, steps), ust);
  CHECK(t3.slice(1).l2_norm() == 0.0);
}

TEST_CASE("bernstein probe: Linf vs 2^(j/2) L2 ratio bounded across bands") {
  auto g = make_grid(1024, 32.0);
  LpCalculus lp(g);
  Rng rng(37);
  std::vector<double> ratios;
  for (int trial = 0; trial < 100; ++trial) {
    const int j = 2 + static_cast<int>(rng.uniform() * (g->j_max() - 2));
    const auto u = random_band_field(lp, j, rng);
    const auto s = u.samples();
    double linf = 0.0;
    for (const auto& v : s) linf = std::max(linf, std::abs(v));
    const double l2 = u.l2_norm();
    if (l2 == 0.0) continue;
    ratios.push_back(linf / (std::ldexp(1.0, j) * 0.5 * l2 / std::sqrt(std::ldexp(1.0, j))));
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  const double maxr = ratios.back();
  CHECK(maxr / median <= 10.0);
}
