#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "paraairy/norms.hpp"
#include "paraairy/rng.hpp"

using namespace paraairy;

namespace {

SpectralField random_field(const GridPtr& g, Rng& rng) {
  SpectralField u(g);
  for (auto& c : u.coef()) c = Complex(rng.normal(), rng.normal());
  return u;
}

SpaceTimeField random_st_field(const GridPtr& g, int steps, Rng& rng) {
  std::vector<SpectralField> slices;
  for (int i = 0; i <= steps; ++i) slices.push_back(random_field(g, rng));
  return SpaceTimeField(std::move(slices));
}

// Smooth space-time field with moderate spectral content.
SpaceTimeField smooth_st_field(const Context& ctx, int steps, Rng& rng) {
  auto u = random_st_field(ctx.grid, steps, rng);
  SpaceTimeField out(ctx.grid, steps);
  for (int i = 0; i <= steps; ++i) {
    auto s = u.slice(i);
    for (int m = 0; m < ctx.grid->n(); ++m) {
      const double xi = ctx.grid->xi(m);
      s.coef()[m] *= std::exp(-0.15 * xi * xi);
    }
    out.slice(i) = s;
  }
  return out;
}

/// Independent brute force over every (level, cube) pair, mirroring the
/// production summation order so agreement is exact.
double x_norm_oracle(const Context& ctx, const SpaceTimeField& u) {
  const int n = ctx.grid->n();
  const auto tw = trapezoid_weights(u.slice_count());
  std::vector<std::vector<double>> ssq(u.slice_count());
  std::vector<double> rho(n, 0.0);
  for (int s = 0; s < u.slice_count(); ++s) {
    const auto samples = u.slice(s).samples();
    ssq[s].resize(n);
    for (int i = 0; i < n; ++i) ssq[s][i] = std::norm(samples[i]);
    for (int i = 0; i < n; ++i) rho[i] += tw[s] * ssq[s][i];
  }
  double best = 0.0;
  for (int l = 0; l <= ctx.cubes->level_max(); ++l) {
    const auto& lv = ctx.cubes->level(l);
    const double scale = std::ldexp(1.0, -l);
    for (int q = 0; q < lv.cube_count; ++q) {
      double s = 0.0;
      for (int i = lv.bounds[q]; i < lv.bounds[q + 1]; ++i) s += rho[i];
      best = std::max(best, scale * s);
    }
  }
  return std::sqrt(best * ctx.grid->dx());
}

}  // namespace

TEST_CASE("cube windows form an exact square partition of unity") {
  auto ctx = make_context(256, 32.0);
  for (int l = 0; l <= ctx.cubes->level_max(); ++l) {
    const auto& lv = ctx.cubes->level(l);
    std::vector<double> sum(256, 0.0);
    for (const auto& w : lv.windows)
      for (std::size_t t = 0; t < w.chi.size(); ++t)
        sum[(w.start + static_cast<int>(t)) % 256] += w.chi[t] * w.chi[t];
    for (double v : sum) CHECK(std::abs(v - 1.0) <= 1e-12);
  }
}

TEST_CASE("cube windows are 1 on the cube interior and local") {
  auto ctx = make_context(256, 32.0);
  const auto& lv = ctx.cubes->level(2);  // 8 cubes of length 4
  REQUIRE(lv.cube_count == 8);
  const double dx = ctx.grid->dx();
  for (int q = 0; q < lv.cube_count; ++q) {
    const auto& w = lv.windows[q];
    // interior: at least 1/2 inside both edges
    for (std::size_t t = 0; t < w.chi.size(); ++t) {
      const double x = (w.start + static_cast<int>(t)) % 256 * dx;
      const double left = lv.bounds[q] * dx;
      const double right = lv.bounds[q + 1] * dx;
      if (x >= left + 0.5 && x <= right - 0.5) CHECK(w.chi[t] == doctest::Approx(1.0).epsilon(1e-12));
    }
    // support stays within 1/2 of the cube
    const double supp_len = (w.chi.size() - 1) * dx;
    CHECK(supp_len <= 4.0 + 1.0 + 2 * dx);
  }
}

TEST_CASE("l2 partition norm basics") {
  auto ctx = make_context(256, 32.0);
  SpaceTimeField zero(ctx.grid, 4);
  CHECK(l2_partition_norm(ctx, zero, 2, InnerNorm::kL2tx).value == 0.0);

  // A bump supported in one cube interior: the partition sum collapses to the
  // single inner norm.
  std::vector<Complex> s(256, Complex(0.0, 0.0));
  const auto& lv = ctx.cubes->level(3);  // cubes of length 8
  const double dx = ctx.grid->dx();
  for (int i = 0; i < 256; ++i) {
    const double x = i * dx;  // offset from x0
    const double c = 4.0;     // center of cube 0 of length 8, inset by the margin
    if (std::abs(x - c) < 2.5) s[i] = std::exp(-1.0 / (1.0 - std::pow((x - c) / 2.5, 2)));
  }
  (void)lv;
  const auto bump = SpectralField::from_samples(ctx.grid, s);
  const auto stb = constant_in_time(bump, 4);
  const double part = l2_partition_norm(ctx, stb, 3, InnerNorm::kL2tx).value;
  CHECK(part == doctest::Approx(bump.l2_norm()).epsilon(1e-10));

  // Degenerate level reports the whole-domain norm with a flag.
  const auto res = l2_partition_norm(ctx, stb, 8, InnerNorm::kL2tx);
  CHECK(res.degenerate);
  CHECK(res.value == doctest::Approx(bump.l2_norm()).epsilon(1e-10));
}

TEST_CASE("linf-type partition norms are near-monotone under coarsening") {
  auto ctx = make_context(256, 32.0);
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = smooth_st_field(ctx, 6, rng);
    double prev = l2_partition_norm(ctx, u, 0, InnerNorm::kLinfL2).value;
    for (int l = 1; l <= ctx.cubes->level_max(); ++l) {
      const double cur = l2_partition_norm(ctx, u, l, InnerNorm::kLinfL2).value;
      CHECK(cur <= prev * 1.05);
      prev = cur;
    }
  }
}

TEST_CASE("x norm: zero, homogeneity, brute-force agreement") {
  auto ctx = make_context(256, 32.0);
  CHECK(x_norm(ctx, SpaceTimeField(ctx.grid, 4)) == 0.0);
  Rng rng(43);
  const auto u = smooth_st_field(ctx, 6, rng);
  const double nx = x_norm(ctx, u);
  CHECK(x_norm(ctx, 2.0 * u) == doctest::Approx(2.0 * nx).epsilon(1e-14));
  CHECK(nx == x_norm_oracle(ctx, u));  // exact: identical summation order

  // Time-constant bump in one cube: the sup is attained at the level matching
  // the bump's extent; verify against the enumerated maximum.
  std::vector<Complex> s(256, Complex(0.0, 0.0));
  for (int i = 0; i < 256; ++i) {
    const double x = i * ctx.grid->dx();
    if (std::abs(x - 6.0) < 2.0) s[i] = 1.0;
  }
  const auto bump = constant_in_time(SpectralField::from_samples(ctx.grid, s), 4);
  CHECK(x_norm(ctx, bump) == x_norm_oracle(ctx, bump));
}

TEST_CASE("xj norm definition") {
  auto ctx = make_context(256, 32.0);
  Rng rng(47);
  const auto u = smooth_st_field(ctx, 6, rng);
  const double x = x_norm(ctx, u);
  const double li = u.linf_l2_norm();
  CHECK(xj_norm(ctx, u, 0) == doctest::Approx(x + li).epsilon(1e-14));
  const double x3 = xj_norm(ctx, u, 3);
  const double x4 = xj_norm(ctx, u, 4);
  CHECK(x4 - x3 == doctest::Approx(8.0 * x).epsilon(1e-12));
  CHECK(xj_norm(ctx, SpaceTimeField(ctx.grid, 4), 2) == 0.0);
}

TEST_CASE("l2xs: zero, single band, low-frequency probe") {
  auto ctx = make_context(512, 32.0);
  CHECK(l2xs_norm(ctx, SpaceTimeField(ctx.grid, 4), 2.0) == 0.0);

  Rng rng(53);
  const int j0 = 3;
  auto u = random_st_field(ctx.grid, 6, rng);
  // strictly inside band j0: keep only the plateau frequency range where
  // neighbouring symbols vanish
  SpaceTimeField band(ctx.grid, 6);
  for (int i = 0; i <= 6; ++i) {
    auto sl = u.slice(i);
    for (int m = 0; m < ctx.grid->n(); ++m) {
      const double axi = std::abs(ctx.grid->xi(m));
      if (!(axi > 7.9 && axi < 8.1)) sl.coef()[m] = Complex(0.0, 0.0);
    }
    band.slice(i) = sl;
  }
  std::vector<double> per_band;
  const double total = l2xs_norm(ctx, band, 1.5, &per_band);
  CHECK(per_band[j0] == doctest::Approx(total).epsilon(1e-12));
  for (int j = 0; j < static_cast<int>(per_band.size()); ++j)
    if (j != j0) CHECK(per_band[j] == 0.0);

  // est:LFXH probe: band-0 time-constant fields
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_field(ctx.grid, rng);
    auto low = ctx.lp->project_band(f, 0);
    const auto st = constant_in_time(low, 4);
    const double lhs = l2xs_norm(ctx, st, 2.0);
    const double rhs = linf_l2hs_norm(ctx, st, 2.0);
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }
  CHECK(worst <= 12.0);
}

TEST_CASE("l2hs: single mode and equivalence with the standard Sobolev norm") {
  auto ctx = make_context(512, 32.0 * std::numbers::pi);
  const int j = 3;
  const int m = (1 << j) * 16;
  SpectralField mode(ctx.grid);
  mode.coef()[m] = Complex(1.0, 0.0);
  std::vector<double> per_band;
  const double v = l2hs_norm(ctx, mode, 2.0, &per_band);
  CHECK(v == doctest::Approx(std::pow(2.0, 2.0 * j) * mode.l2_norm()).epsilon(1e-10));
  CHECK(per_band[j] == doctest::Approx(v).epsilon(1e-12));

  auto ctx2 = make_context(512, 32.0);
  Rng rng(59);
  double lo = 1e300, hi = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto u = ctx2.lp->project_resolved(random_field(ctx2.grid, rng));
    const double a = l2hs_norm(ctx2, u, 2.0);
    double b = 0.0;
    for (int i = 0; i < ctx2.grid->n(); ++i) {
      const double xi = ctx2.grid->xi(i);
      b += std::pow(1.0 + xi * xi, 2.0) * std::norm(u.coef()[i]);
    }
    b = std::sqrt(ctx2.grid->length() * b);
    const double r = a / b;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 16.0);
  CHECK(hi <= 16.0);
  CHECK(lo >= 1.0 / 16.0);

  // Frozen regression: at s = 0 the ratio to the plain L2 norm sits in
  // [1/sqrt(2), 1] for resolved fields (band-overlap bound).
  for (int trial = 0; trial < 20; ++trial) {
    auto u = ctx2.lp->project_resolved(random_field(ctx2.grid, rng));
    const double r = l2hs_norm(ctx2, u, 0.0) / u.l2_norm();
    CHECK(r >= 0.69);
    CHECK(r <= 1.0 + 1e-9);
  }
}

TEST_CASE("y surrogate: zero, atom normalization, split bound, duality probe") {
  auto ctx = make_context(256, 32.0);
  CHECK(y_upper(ctx, SpaceTimeField(ctx.grid, 4)) == 0.0);

  // Atom: supported in one level-2 cube with L2 space-time norm 2^(-l/2).
  const int l = 2;
  std::vector<Complex> s(256, Complex(0.0, 0.0));
  const double dx = ctx.grid->dx();
  for (int i = 0; i < 256; ++i) {
    const double x = i * dx;
    if (x >= 1.0 && x < 3.0) s[i] = 1.0;
  }
  auto bump = SpectralField::from_samples(ctx.grid, s);
  auto atom = constant_in_time(bump, 4);
  atom *= std::ldexp(1.0, -l / 2) / bump.l2_norm() * (l % 2 ? std::sqrt(0.5) : 1.0);
  const double yv = y_upper(ctx, atom);
  CHECK(yv <= 1.1);
  CHECK(yv >= 0.3);

  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = smooth_st_field(ctx, 6, rng);
    const double yj = yj_surrogate(ctx, f, 2);
    // Convex splits f = theta f + (1-theta) f: the surrogate never exceeds
    // the cost of any split in its reachable family.
    for (double theta : {0.0, 0.3, 0.7, 1.0}) {
      const double rhs = theta * std::ldexp(1.0, -2) * y_upper(ctx, f) +
                         (1.0 - theta) * [&] {
                           const auto tw = trapezoid_weights(f.slice_count());
                           double acc = 0.0;
                           for (int i = 0; i < f.slice_count(); ++i)
                             acc += tw[i] * f.slice(i).l2_norm();
                           return acc;
                         }();
      CHECK(yj <= rhs + 1e-10);
    }
  }

  // Duality probe: |<f, u>| <= C y_upper(f) x_norm(u).
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = smooth_st_field(ctx, 6, rng);
    const auto u = smooth_st_field(ctx, 6, rng);
    const auto tw = trapezoid_weights(f.slice_count());
    Complex pair(0.0, 0.0);
    for (int i = 0; i < f.slice_count(); ++i) {
      const auto sf = f.slice(i).samples();
      const auto su = u.slice(i).samples();
      Complex acc(0.0, 0.0);
      for (int p = 0; p < ctx.grid->n(); ++p) acc += sf[p] * std::conj(su[p]);
      pair += tw[i] * acc * ctx.grid->dx();
    }
    CHECK(std::abs(pair) <= 3.0 * y_upper(ctx, f) * x_norm(ctx, u) + 1e-12);
  }
}

TEST_CASE("norms are homogeneous and satisfy the triangle inequality") {
  auto ctx = make_context(256, 32.0);
  Rng rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = smooth_st_field(ctx, 6, rng);
    const auto v = smooth_st_field(ctx, 6, rng);
    const auto w = u + v;
    CHECK(l2xs_norm(ctx, w, 1.5) <= l2xs_norm(ctx, u, 1.5) + l2xs_norm(ctx, v, 1.5) + 1e-10);
    CHECK(x_norm(ctx, w) <= x_norm(ctx, u) + x_norm(ctx, v) + 1e-10);
    CHECK(y_upper(ctx, w) <= y_upper(ctx, u) + y_upper(ctx, v) + 1e-10);
    CHECK(l2xs_norm(ctx, 3.0 * u, 1.5) == doctest::Approx(3.0 * l2xs_norm(ctx, u, 1.5)).epsilon(1e-12));
    CHECK(y_upper(ctx, 3.0 * u) == doctest::Approx(3.0 * y_upper(ctx, u)).epsilon(1e-12));
  }
}

TEST_CASE("norm report totals match per-band square sums") {
  auto ctx = make_context(256, 32.0);
  Rng rng(71);
  const auto u = smooth_st_field(ctx, 6, rng);
  const auto f = smooth_st_field(ctx, 6, rng);
  const auto r = make_norm_report(ctx, u, &f, 1.5);
  double sx = 0.0, sy = 0.0, sh = 0.0;
  for (double b : r.l2xs_band) sx += b * b;
  for (double b : r.l2ys_band) sy += b * b;
  for (double b : r.l2hs_band) sh += b * b;
  CHECK(std::sqrt(sx) == doctest::Approx(r.l2xs).epsilon(1e-10));
  CHECK(std::sqrt(sy) == doctest::Approx(r.l2ys_surrogate).epsilon(1e-10));
  CHECK(std::sqrt(sh) == doctest::Approx(r.l2hs).epsilon(1e-10));
  CHECK(r.has_forcing);
}
