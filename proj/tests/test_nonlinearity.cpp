#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "paraairy/errors.hpp"
#include "paraairy/nonlinearity.hpp"
#include "paraairy/rng.hpp"

using namespace paraairy;

namespace {

Monomial mono(double c, int a0, int a1, int a2) {
  return Monomial{Complex(c, 0.0), {a0, a1, a2}};
}

SpectralField random_low_field(const Context& ctx, Rng& rng, double amp) {
  SpectralField u(ctx.grid);
  for (auto& c : u.coef()) c = Complex(rng.normal(), rng.normal());
  auto low = ctx.lp->project_band(u, 0);
  low *= amp / std::max(low.l2_norm(), 1e-30);
  return low;
}

SpaceTimeField random_resolved_st(const Context& ctx, int steps, Rng& rng, double amp) {
  std::vector<SpectralField> slices;
  for (int i = 0; i <= steps; ++i) {
    SpectralField u(ctx.grid);
    for (auto& c : u.coef()) c = Complex(rng.normal(), rng.normal());
    for (int m = 0; m < ctx.grid->n(); ++m) {
      const double xi = ctx.grid->xi(m);
      u.coef()[m] *= std::exp(-0.02 * xi * xi);
    }
    auto r = ctx.lp->project_resolved(u);
    r *= amp / std::max(r.l2_norm(), 1e-30);
    slices.push_back(std::move(r));
  }
  return SpaceTimeField(std::move(slices));
}

double st_rel_diff(const SpaceTimeField& a, const SpaceTimeField& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.slice_count(); ++i) {
    const double d = (a.slice(i) - b.slice(i)).l2_norm();
    const double s = b.slice(i).l2_norm();
    num += d * d;
    den += s * s;
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

/// Independent enumeration oracle for lambda: walks every beta <= alpha in a
/// different loop order and compares fractions by cross-multiplication.
double lambda_oracle(const std::vector<Monomial>& ms) {
  bool have = false;
  long bn = 0, bd = 1;
  for (const auto& m : ms) {
    if (m.coeff == Complex(0.0, 0.0)) continue;
    for (int b2 = m.alpha[2]; b2 >= 0; --b2)
      for (int b1 = m.alpha[1]; b1 >= 0; --b1)
        for (int b0 = m.alpha[0]; b0 >= 0; --b0) {
          if (b0 + b1 + b2 < 2) continue;
          const long n = b1 + 2L * b2 - 3;
          const long d = b0 + b1 + b2 - 1;
          if (!have || n * bd > bn * d) {
            bn = n;
            bd = d;
            have = true;
          }
        }
  }
  return static_cast<double>(bn) / static_cast<double>(bd);
}

}  // namespace

TEST_CASE("validate accepts KdV and fills the scalar table") {
  const auto f = validate_nonlinearity({mono(-6.0, 1, 1, 0)});
  CHECK(f.degree == 2);
  CHECK(f.c1 == Complex(0.0, 0.0));
  CHECK(f.c2 == Complex(0.0, 0.0));
  CHECK(f.lambda == -2.0);
  CHECK(f.s0 == 1.5);
}

TEST_CASE("validate rejects the excluded shapes") {
  CHECK_THROWS_AS(validate_nonlinearity({}), SolverError);
  CHECK_THROWS_AS(validate_nonlinearity({mono(1.0, 1, 0, 1)}), SolverError);
  CHECK_THROWS_AS(validate_nonlinearity({mono(1.0, 1, 0, 0)}), SolverError);
  CHECK_THROWS_AS(validate_nonlinearity({mono(1.0, 0, 0, 0)}), SolverError);
  try {
    validate_nonlinearity({mono(1.0, 1, 0, 1)});
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::kPresenceOfUuxx);
  }
}

TEST_CASE("quadratic-derivative pair routes fully to B") {
  const auto f = validate_nonlinearity({mono(1.0, 0, 1, 1), mono(0.5, 0, 0, 2)});
  CHECK(f.c1 == Complex(1.0, 0.0));
  CHECK(f.c2 == Complex(0.5, 0.0));
  const auto split = split_bad_good(f, 2);
  // with u0 = 0 nothing survives in G: every good term carries a u0 factor
  for (const auto& t : split.good)
    CHECK(t.u0_powers[0] + t.u0_powers[1] + t.u0_powers[2] >= 1);
}

TEST_CASE("lambda exponent on reference monomials and against the oracle") {
  CHECK(lambda_exponent({mono(1.0, 2, 0, 0)}) == -3.0);
  CHECK(lambda_exponent({mono(1.0, 1, 1, 0)}) == -2.0);
  CHECK(lambda_exponent({mono(1.0, 0, 0, 2)}) == 1.0);
  CHECK(lambda_exponent({mono(1.0, 0, 1, 1)}) == 0.0);

  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Monomial> ms;
    const int count = 1 + static_cast<int>(rng.uniform() * 3);
    for (int i = 0; i < count; ++i) {
      int a0 = static_cast<int>(rng.uniform() * 4);
      int a1 = static_cast<int>(rng.uniform() * 3);
      int a2 = static_cast<int>(rng.uniform() * 3);
      if (a0 + a1 + a2 < 2) a0 += 2;
      if (a0 == 1 && a1 == 0 && a2 == 1) a1 = 1;
      ms.push_back(mono(rng.normal(), a0, a1, a2));
    }
    const auto f = validate_nonlinearity(ms);
    CHECK(f.lambda == lambda_oracle(ms));  // exact rational agreement
    CHECK(f.lambda >= -3.0);
    CHECK(f.lambda < 2.0);
    CHECK(f.s0 >= f.lambda + 0.5);
  }
}

TEST_CASE("s0 classification on reference monomials") {
  CHECK(s0_threshold({mono(1.0, 3, 0, 0)}) == 0.5);
  CHECK(s0_threshold({mono(1.0, 0, 3, 0)}) == 2.0);
  CHECK(s0_threshold({mono(1.0, 0, 0, 2)}) == 4.5);
  CHECK(s0_threshold({mono(1.0, 0, 1, 1)}) == 3.5);
  CHECK(s0_threshold({mono(1.0, 1, 1, 0)}) == 1.5);
  // max over monomials present
  CHECK(s0_threshold({mono(1.0, 3, 0, 0), mono(1.0, 0, 0, 2)}) == 4.5);
}

TEST_CASE("gamma and sigma thresholds") {
  CHECK(gamma_exponent(5.0, 1.0) == 1.0);
  CHECK(gamma_exponent(1.6, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_exponent(1.5, 1.0), SolverError);

  const auto kdv = validate_nonlinearity({mono(-6.0, 1, 1, 0)});
  CHECK(sigma_exponent(4.0, kdv) == 4.0);
  const auto quad = validate_nonlinearity({mono(1.0, 0, 0, 2)});
  CHECK(sigma_exponent(5.0, quad) == 4.0);
  CHECK_THROWS_AS(sigma_exponent(4.4, quad), SolverError);
}

TEST_CASE("good-term decay exponents are nonnegative, and >= 1 for low beta") {
  Rng rng(103);
  const double s = 4.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Monomial> ms;
    for (int i = 0; i < 2; ++i) {
      int a0 = static_cast<int>(rng.uniform() * 3);
      int a1 = static_cast<int>(rng.uniform() * 3);
      int a2 = static_cast<int>(rng.uniform() * 2);
      if (a0 + a1 + a2 < 2) a0 += 2;
      if (a0 == 1 && a1 == 0 && a2 == 1) a1 = 1;
      ms.push_back(mono(1.0 + rng.uniform(), a0, a1, a2));
    }
    const auto f = validate_nonlinearity(ms);
    const auto split = split_bad_good(f, 3);
    for (const auto& t : split.good) {
      const double mu = mu_exponent(t, f.lambda, s);
      CHECK(mu >= -1e-12);
      if (t.beta[0] + t.beta[1] + t.beta[2] <= 1) CHECK(mu >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("B + G equals the directly evaluated rescaled right-hand side") {
  auto ctx = make_context(512, 32.0);
  Rng rng(107);
  const auto f = validate_nonlinearity(
      {mono(1.0, 0, 1, 1), mono(0.25, 0, 0, 2), mono(-2.0, 2, 0, 0)});
  const auto split = split_bad_good(f, 2);
  const auto u0 = random_low_field(ctx, rng, 0.5);
  const auto v = random_resolved_st(ctx, 3, rng, 0.3);
  const auto b = evaluate_B(split, v, u0);
  const auto g = evaluate_G(split, v, u0);
  const auto ft = evaluate_F_tilde(split, f, v, u0);
  CHECK(st_rel_diff(b + g, ft) < 1e-12);
}

TEST_CASE("evaluate_G reduces to the pure-u0 terms at v = 0") {
  auto ctx = make_context(512, 32.0);
  Rng rng(109);
  const auto f = validate_nonlinearity({mono(1.5, 2, 0, 0)});
  const auto split = split_bad_good(f, 1);
  const auto u0 = random_low_field(ctx, rng, 0.5);
  const SpaceTimeField zero(ctx.grid, 3);
  const auto g = evaluate_G(split, zero, u0);
  // 1.5 * 2^((lambda-3)k ... ) u0^2 - dx^3 u0 with lambda = -3, k = 1
  const double scale = std::exp2((-3.0 * (1 - 2) + 0 + 0 - 3) * 1);
  auto expected = Complex(1.5 * scale, 0.0) * multiply(u0, u0);
  expected -= derivative(u0, 3);
  CHECK(st_rel_diff(g, constant_in_time(expected, 3)) < 1e-12);

  // and with u0 = 0 as well, G vanishes entirely
  const auto g0 = evaluate_G(split, zero, SpectralField(ctx.grid));
  CHECK(g0.linf_l2_norm() == 0.0);
}

TEST_CASE("frozen coefficient: zero cases, time-constant case, factor two") {
  auto ctx = make_context(512, 32.0);
  Rng rng(113);
  const auto u0 = random_low_field(ctx, rng, 0.5);
  const auto v = random_resolved_st(ctx, 3, rng, 0.3);

  const auto kdv = validate_nonlinearity({mono(-6.0, 1, 1, 0)});
  const auto a_kdv = coefficient_a(ctx, split_bad_good(kdv, 1), v, u0, 6);
  CHECK(a_kdv.linf_l2_norm() == 0.0);

  const auto quad = validate_nonlinearity({mono(1.0, 0, 0, 2)});
  const auto split = split_bad_good(quad, 1);
  const SpaceTimeField zero(ctx.grid, 3);
  const auto a0 = coefficient_a(ctx, split, zero, u0, 6);
  for (int i = 0; i < a0.slice_count(); ++i)
    CHECK((a0.slice(i) - a0.slice(0)).l2_norm() == 0.0);

  // with u0 = 0 the c2 part is exactly 2 c2 2^((1-l)k) dx(S_{<j-4} v)
  const int j = 6;
  const auto a_v = coefficient_a(ctx, split, v, SpectralField(ctx.grid), j);
  for (int i = 0; i < v.slice_count(); ++i) {
    auto expect = Complex(2.0 * split.c2_scale, 0.0) *
                  derivative(ctx.lp->project_below(v.slice(i), j - 4), 1);
    CHECK((a_v.slice(i) - expect).l2_norm() <= 1e-12 * expect.l2_norm());
  }
}

TEST_CASE("b_j vanishes for low-passed input and zero coefficients") {
  auto ctx = make_context(2048, 32.0);
  REQUIRE(ctx.j_max() >= 6);
  Rng rng(127);
  const auto f = validate_nonlinearity({mono(1.0, 0, 1, 1), mono(0.5, 0, 0, 2)});
  const auto split = split_bad_good(f, 1);
  const int j = 6;
  // v supported strictly below 2^(j-5): then S_{>=j-4} kills vx and vxx
  auto v = random_resolved_st(ctx, 3, rng, 1.0);
  for (int i = 0; i < v.slice_count(); ++i)
    for (int m = 0; m < ctx.grid->n(); ++m)
      if (std::abs(ctx.grid->xi(m)) > std::ldexp(1.0, j - 5))
        v.slice(i).coef()[m] = Complex(0.0, 0.0);
  CHECK(bj_terms(ctx, split, v, j).linf_l2_norm() < 1e-13);

  const auto kdv = validate_nonlinearity({mono(-6.0, 1, 1, 0)});
  const auto bz = bj_terms(ctx, split_bad_good(kdv, 1), v, j);
  CHECK(bz.linf_l2_norm() == 0.0);
}

TEST_CASE("paradifferential decomposition reproduces the rescaled RHS exactly") {
  auto ctx = make_context(1024, 32.0);
  Rng rng(131);
  const auto f = validate_nonlinearity(
      {mono(0.8, 0, 1, 1), mono(0.3, 0, 0, 2), mono(-1.0, 2, 0, 0)});
  const auto split = split_bad_good(f, 2);
  const auto u0 = random_low_field(ctx, rng, 0.4);
  const auto v = random_resolved_st(ctx, 3, rng, 0.3);

  const auto lhs = frozen_paraproduct_dxx(ctx, split, v, u0, v) + assemble_H(ctx, split, v, u0);
  const auto rhs = ctx.lp->project_resolved(evaluate_F_tilde(split, f, v, u0));
  CHECK(st_rel_diff(lhs, rhs) < 1e-8);

  // b_j + principal + commutator reproduces S_j B band by band
  const auto b = evaluate_B(split, v, u0);
  SpaceTimeField bsum(ctx.grid, v.steps());
  for (int j = 0; j <= ctx.j_max(); ++j) {
    const auto aj = coefficient_a(ctx, split, v, u0, j);
    const auto bj = bj_terms(ctx, split, v, j);
    for (int sl = 0; sl < v.slice_count(); ++sl) {
      const auto dxa = derivative(aj.slice(sl), 1);
      const auto vxx = derivative(v.slice(sl), 2);
      bsum.slice(sl) += ctx.lp->project_band(multiply(dxa, vxx), j) + bj.slice(sl);
    }
  }
  CHECK(st_rel_diff(bsum, ctx.lp->project_resolved(b)) < 1e-8);
}

TEST_CASE("H reduces to the resolved good terms when no bad quadratics exist") {
  auto ctx = make_context(512, 32.0);
  Rng rng(137);
  const auto kdv = validate_nonlinearity({mono(-6.0, 1, 1, 0)});
  const auto split = split_bad_good(kdv, 1);
  const auto u0 = random_low_field(ctx, rng, 0.5);
  const auto v = random_resolved_st(ctx, 3, rng, 0.3);
  const auto h = assemble_H(ctx, split, v, u0);
  const auto g = ctx.lp->project_resolved(evaluate_G(split, v, u0));
  CHECK(st_rel_diff(h, g) == 0.0);
}
