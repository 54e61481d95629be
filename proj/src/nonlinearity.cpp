#include "paraairy/nonlinearity.hpp"

#include <cmath>

#include "paraairy/errors.hpp"

namespace paraairy {

namespace {

bool nonzero(const Complex& c) { return c != Complex(0.0, 0.0); }

long binomial(int n, int r) {
  long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// Classification rows for the regularity threshold. A monomial can match
/// several rows; the threshold takes the max. The two quadratics the table
/// leaves implicit are pinned explicitly: ux uxx needs sigma > 7/2 through
/// the paradifferential route, and ux^2 needs the bilinear estimate, hence 5/2.
double s0_of_monomial(const std::array<int, 3>& a) {
  const int a0 = a[0], a1 = a[1], a2 = a[2];
  double best = -1.0;
  auto hit = [&](double v) { best = std::max(best, v); };
  if (a0 >= 2 && a1 == 0 && a2 == 0) hit(0.5);
  if (a0 >= 2 && a1 == 1 && a2 == 0) hit(1.0);
  if (a0 >= 1 && a1 >= 1 && a2 == 0) hit(1.5);
  if (a0 >= 2 && a2 == 1) hit(1.5);
  if (a0 == 0 && a1 >= 3 && a2 == 0) hit(2.0);
  if (a0 == 0 && a1 == 2 && a2 == 0) hit(2.5);
  if (a0 + a1 >= 2 && a2 >= 1) hit(2.5);
  if (a0 + a1 + a2 >= 3 && a2 >= 1) hit(3.5);
  if (a0 == 0 && a1 == 1 && a2 == 1) hit(3.5);
  if (a0 == 0 && a1 == 0 && a2 >= 2) hit(4.5);
  if (best < 0.0)
    throw SolverError(ErrorCode::kUnclassified,
                      "monomial (" + std::to_string(a0) + "," + std::to_string(a1) + "," +
                          std::to_string(a2) + ") matches no table row");
  return best;
}

struct SliceSamples {
  std::vector<Complex> d0, d1, d2;
};

SliceSamples derivative_samples(const SpectralField& u) {
  SliceSamples s;
  s.d0 = u.samples();
  s.d1 = derivative(u, 1).samples();
  s.d2 = derivative(u, 2).samples();
  return s;
}

Complex int_pow(const Complex& z, int p) {
  Complex out(1.0, 0.0);
  for (int i = 0; i < p; ++i) out *= z;
  return out;
}

}  // namespace

double lambda_exponent(const std::vector<Monomial>& monomials, long* num, long* den) {
  long best_num = 0, best_den = 1;
  bool have = false;
  for (const auto& m : monomials) {
    if (!nonzero(m.coeff)) continue;
    for (int b0 = 0; b0 <= m.alpha[0]; ++b0)
      for (int b1 = 0; b1 <= m.alpha[1]; ++b1)
        for (int b2 = 0; b2 <= m.alpha[2]; ++b2) {
          const int tot = b0 + b1 + b2;
          if (tot < 2) continue;
          const long n = b1 + 2L * b2 - 3;
          const long d = tot - 1;
          if (!have || n * best_den > best_num * d) {
            best_num = n;
            best_den = d;
            have = true;
          }
        }
  }
  if (num) *num = best_num;
  if (den) *den = best_den;
  return static_cast<double>(best_num) / static_cast<double>(best_den);
}

double s0_threshold(const std::vector<Monomial>& monomials) {
  double best = 0.0;
  for (const auto& m : monomials)
    if (nonzero(m.coeff)) best = std::max(best, s0_of_monomial(m.alpha));
  return best;
}

PolynomialNonlinearity validate_nonlinearity(const std::vector<Monomial>& monomials) {
  if (monomials.empty()) throw SolverError(ErrorCode::kEmpty, "no monomials given");
  PolynomialNonlinearity f;
  for (const auto& m : monomials) {
    if (m.total() <= 1)
      throw SolverError(ErrorCode::kDegenerate, "constant or linear monomial present");
    if (m.alpha == std::array<int, 3>{1, 0, 1})
      throw SolverError(ErrorCode::kPresenceOfUuxx, "the u uxx quadratic is excluded");
    f.degree = std::max(f.degree, m.total());
    if (m.alpha == std::array<int, 3>{0, 1, 1}) f.c1 += m.coeff;
    if (m.alpha == std::array<int, 3>{0, 0, 2}) f.c2 += m.coeff;
  }
  f.monomials = monomials;
  f.lambda = lambda_exponent(monomials, &f.lambda_num, &f.lambda_den);
  f.s0 = s0_threshold(monomials);
  return f;
}

double gamma_exponent(double s, double lambda) {
  const double g = std::min(1.0, s - lambda - 0.5);
  if (!(g > 0.0))
    throw SolverError(ErrorCode::kNonpositiveGamma,
                      "s = " + std::to_string(s) + " is not above lambda + 1/2");
  return g;
}

double sigma_exponent(double s, const PolynomialNonlinearity& f) {
  const double sigma = nonzero(f.c2) ? s - 1.0 : s;
  if (!(sigma > 3.5))
    throw SolverError(ErrorCode::kSigmaTooSmall, "sigma = " + std::to_string(sigma) +
                                                     " does not exceed 7/2");
  return sigma;
}

BadGoodSplit split_bad_good(const PolynomialNonlinearity& f, int k) {
  if (k < 0) throw SolverError(ErrorCode::kInvalidArgument, "rescaling level must be >= 0");
  BadGoodSplit out;
  out.k = k;
  out.lambda = f.lambda;
  out.c1 = f.c1;
  out.c2 = f.c2;
  out.c1_scale = std::exp2(-f.lambda * k);
  out.c2_scale = std::exp2((1.0 - f.lambda) * k);
  const std::array<int, 3> uxuxx{0, 1, 1};
  const std::array<int, 3> uxx2{0, 0, 2};
  for (const auto& m : f.monomials) {
    if (!nonzero(m.coeff)) continue;
    const double mu_alpha =
        f.lambda * (1 - m.total()) + m.alpha[1] + 2.0 * m.alpha[2] - 3.0;
    const double scale = std::exp2(mu_alpha * k);
    for (int b0 = 0; b0 <= m.alpha[0]; ++b0)
      for (int b1 = 0; b1 <= m.alpha[1]; ++b1)
        for (int b2 = 0; b2 <= m.alpha[2]; ++b2) {
          const std::array<int, 3> beta{b0, b1, b2};
          long mult = binomial(m.alpha[0], b0) * binomial(m.alpha[1], b1) *
                      binomial(m.alpha[2], b2);
          if (m.alpha == uxuxx) {
            // both vx vxx and dx(u0) vxx live in B
            if (beta == std::array<int, 3>{0, 1, 1} || beta == std::array<int, 3>{0, 0, 1})
              continue;
          }
          if (m.alpha == uxx2) {
            if (beta == std::array<int, 3>{0, 0, 2}) continue;
            // B keeps one of the two identical cross terms dxx(u0) vxx
            if (beta == std::array<int, 3>{0, 0, 1}) mult -= 1;
          }
          GoodTerm t;
          t.coeff = m.coeff * static_cast<double>(mult) * scale;
          t.alpha = m.alpha;
          t.beta = beta;
          t.v_powers = beta;
          t.u0_powers = {m.alpha[0] - b0, m.alpha[1] - b1, m.alpha[2] - b2};
          out.good.push_back(t);
        }
  }
  return out;
}

double mu_exponent(const GoodTerm& term, double lambda, double s) {
  const int b_tot = term.beta[0] + term.beta[1] + term.beta[2];
  return lambda * (b_tot - 1) - (term.beta[1] + 2.0 * term.beta[2] - 3.0) +
         (s - 0.5) * (term.alpha[0] - term.beta[0]) +
         std::min(s - 1.5, 0.0) * (term.alpha[1] - term.beta[1]) +
         std::min(s - 2.5, 0.0) * (term.alpha[2] - term.beta[2]);
}

SpectralField evaluate_F(const PolynomialNonlinearity& f, const SpectralField& u) {
  const auto s = derivative_samples(u);
  const int n = u.grid()->n();
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (const auto& m : f.monomials) {
    if (!nonzero(m.coeff)) continue;
    for (int i = 0; i < n; ++i)
      out[i] += m.coeff * int_pow(s.d0[i], m.alpha[0]) * int_pow(s.d1[i], m.alpha[1]) *
                int_pow(s.d2[i], m.alpha[2]);
  }
  return SpectralField::from_samples(u.grid(), out);
}

SpaceTimeField evaluate_F(const PolynomialNonlinearity& f, const SpaceTimeField& u) {
  std::vector<SpectralField> slices;
  slices.reserve(u.slice_count());
  for (int i = 0; i < u.slice_count(); ++i) slices.push_back(evaluate_F(f, u.slice(i)));
  return SpaceTimeField(std::move(slices));
}

SpaceTimeField evaluate_G(const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low) {
  const auto u0 = derivative_samples(u0_low);
  const auto u0d3 = derivative(u0_low, 3);
  const int n = v.grid()->n();
  std::vector<SpectralField> slices;
  slices.reserve(v.slice_count());
  for (int sl = 0; sl < v.slice_count(); ++sl) {
    const auto vs = derivative_samples(v.slice(sl));
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (const auto& t : split.good) {
      for (int i = 0; i < n; ++i) {
        Complex val = t.coeff;
        val *= int_pow(u0.d0[i], t.u0_powers[0]) * int_pow(u0.d1[i], t.u0_powers[1]) *
               int_pow(u0.d2[i], t.u0_powers[2]);
        val *= int_pow(vs.d0[i], t.v_powers[0]) * int_pow(vs.d1[i], t.v_powers[1]) *
               int_pow(vs.d2[i], t.v_powers[2]);
        out[i] += val;
      }
    }
    auto field = SpectralField::from_samples(v.grid(), out);
    field -= u0d3;
    slices.push_back(std::move(field));
  }
  return SpaceTimeField(std::move(slices));
}

SpaceTimeField evaluate_B(const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low) {
  const auto u0 = derivative_samples(u0_low);
  const Complex k1 = split.c1 * split.c1_scale;
  const Complex k2 = split.c2 * split.c2_scale;
  const int n = v.grid()->n();
  std::vector<SpectralField> slices;
  slices.reserve(v.slice_count());
  for (int sl = 0; sl < v.slice_count(); ++sl) {
    const auto vs = derivative_samples(v.slice(sl));
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = k1 * (u0.d1[i] * vs.d2[i] + vs.d1[i] * vs.d2[i]) +
               k2 * (u0.d2[i] * vs.d2[i] + vs.d2[i] * vs.d2[i]);
    }
    slices.push_back(SpectralField::from_samples(v.grid(), out));
  }
  return SpaceTimeField(std::move(slices));
}

SpaceTimeField evaluate_F_tilde(const BadGoodSplit& split, const PolynomialNonlinearity& f,
                                const SpaceTimeField& v, const SpectralField& u0_low) {
  const auto u0d3 = derivative(u0_low, 3);
  const int n = v.grid()->n();
  std::vector<SpectralField> slices;
  slices.reserve(v.slice_count());
  for (int sl = 0; sl < v.slice_count(); ++sl) {
    auto w = v.slice(sl);
    w += u0_low;
    const auto ws = derivative_samples(w);
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (const auto& m : f.monomials) {
      if (!nonzero(m.coeff)) continue;
      const double mu_alpha =
          f.lambda * (1 - m.total()) + m.alpha[1] + 2.0 * m.alpha[2] - 3.0;
      const Complex c = m.coeff * std::exp2(mu_alpha * split.k);
      for (int i = 0; i < n; ++i)
        out[i] += c * int_pow(ws.d0[i], m.alpha[0]) * int_pow(ws.d1[i], m.alpha[1]) *
                  int_pow(ws.d2[i], m.alpha[2]);
    }
    auto field = SpectralField::from_samples(v.grid(), out);
    field -= u0d3;
    slices.push_back(std::move(field));
  }
  return SpaceTimeField(std::move(slices));
}

SpaceTimeField coefficient_a(const Context& ctx, const BadGoodSplit& split,
                             const SpaceTimeField& v, const SpectralField& u0_low, int j,
                             bool frozen) {
  const Complex k1 = split.c1 * split.c1_scale;
  const Complex k2 = split.c2 * split.c2_scale;
  const int n = ctx.grid->n();
  SpaceTimeField out(v.grid(), v.steps());
  for (int sl = 0; sl < v.slice_count(); ++sl) {
    const SpectralField low =
        frozen ? ctx.lp->project_below(v.slice(sl), j - 4) : v.slice(sl);
    auto& coef = out.slice(sl).coef();
    for (int i = 0; i < n; ++i) {
      const Complex ixi(0.0, ctx.grid->xi(i));
      const Complex base = u0_low.coef()[i] + low.coef()[i];
      const Complex based = u0_low.coef()[i] + 2.0 * low.coef()[i];
      coef[i] = k1 * base + k2 * ixi * based;
    }
  }
  return out;
}

SpaceTimeField coefficient_a_evolution(const Context& ctx, const BadGoodSplit& split,
                                       const SpaceTimeField& rhs_v, const SpectralField& u0_low,
                                       int j, bool frozen) {
  return coefficient_a(ctx, split, rhs_v, derivative(u0_low, 3), j, frozen);
}

SpaceTimeField bj_terms(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& v,
                        int j) {
  const Complex k1 = split.c1 * split.c1_scale;
  const Complex k2 = split.c2 * split.c2_scale;
  SpaceTimeField out(v.grid(), v.steps());
  if (k1 == Complex(0.0, 0.0) && k2 == Complex(0.0, 0.0)) return out;
  for (int sl = 0; sl < v.slice_count(); ++sl) {
    const auto vx = derivative(v.slice(sl), 1);
    const auto vxx = derivative(v.slice(sl), 2);
    const auto high_vx = vx - ctx.lp->project_below(vx, j - 4);
    const auto high_vxx = vxx - ctx.lp->project_below(vxx, j - 4);
    SpectralField acc(v.grid());
    if (k1 != Complex(0.0, 0.0)) acc += k1 * ctx.lp->project_band(multiply(high_vx, vxx), j);
    if (k2 != Complex(0.0, 0.0))
      acc += k2 * ctx.lp->project_band(multiply(high_vxx, high_vxx), j);
    out.slice(sl) = std::move(acc);
  }
  return out;
}

SpaceTimeField assemble_H(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low) {
  SpaceTimeField h(v.grid(), v.steps());
  const bool has_bad = split.c1 != Complex(0.0, 0.0) || split.c2 != Complex(0.0, 0.0);
  if (has_bad) {
    for (int j = 0; j <= ctx.j_max(); ++j) {
      const auto aj = coefficient_a(ctx, split, v, u0_low, j);
      const auto bj = bj_terms(ctx, split, v, j);
      for (int sl = 0; sl < v.slice_count(); ++sl) {
        const auto dxa = derivative(aj.slice(sl), 1);
        const auto vxx = derivative(v.slice(sl), 2);
        const auto comm = ctx.lp->project_band(multiply(dxa, vxx), j) -
                          multiply(dxa, ctx.lp->project_band(vxx, j));
        h.slice(sl) += comm;
        h.slice(sl) += bj.slice(sl);
      }
    }
  }
  const auto g = evaluate_G(split, v, u0_low);
  h += ctx.lp->project_resolved(g);
  return h;
}

SpaceTimeField frozen_paraproduct_dxx(const Context& ctx, const BadGoodSplit& split,
                                      const SpaceTimeField& v, const SpectralField& u0_low,
                                      const SpaceTimeField& w) {
  SpaceTimeField out(w.grid(), w.steps());
  if (split.c1 == Complex(0.0, 0.0) && split.c2 == Complex(0.0, 0.0)) return out;
  for (int j = 0; j <= ctx.j_max(); ++j) {
    const auto aj = coefficient_a(ctx, split, v, u0_low, j);
    for (int sl = 0; sl < w.slice_count(); ++sl) {
      const auto dxa = derivative(aj.slice(sl), 1);
      const auto wxx_j = ctx.lp->project_band(derivative(w.slice(sl), 2), j);
      out.slice(sl) += multiply(dxa, wxx_j);
    }
  }
  return out;
}

}  // namespace paraairy
