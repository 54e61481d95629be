#include "paraairy/reference.hpp"

#include <cmath>

#include "paraairy/errors.hpp"

namespace paraairy {

namespace {

/// Rotation e^{i xi^3 dt} applied in place.
void rotate(const Grid& g, std::vector<Complex>& coef, double dt) {
  for (int i = 0; i < g.n(); ++i) {
    const double xi = g.xi(i);
    const double phase = xi * xi * xi * dt;
    coef[i] *= Complex(std::cos(phase), std::sin(phase));
  }
}

}  // namespace

SpaceTimeField reference_integrate(const Context& ctx, const PolynomialNonlinearity& f,
                                   const SpectralField& u0, double t_end, int output_steps,
                                   int substeps) {
  if (output_steps < 1 || substeps < 1)
    throw SolverError(ErrorCode::kInvalidArgument, "reference integrator needs positive steps");
  const auto& g = *ctx.grid;
  const double h = t_end / (static_cast<double>(output_steps) * substeps);

  // Interaction picture: w(t) = U(-t) u(t), w' = U(-t) F(U(t) w).
  // Stage evaluations rotate to the stage time, apply F, rotate back.
  auto stage_rhs = [&](const std::vector<Complex>& w, double t_abs) {
    std::vector<Complex> c = w;
    rotate(g, c, t_abs);
    auto fu = evaluate_F(f, ctx.lp->project_resolved(SpectralField(ctx.grid, std::move(c))));
    auto out = ctx.lp->project_resolved(fu).coef();
    rotate(g, out, -t_abs);
    return out;
  };

  std::vector<Complex> w = u0.coef();
  SpaceTimeField out(ctx.grid, output_steps);
  out.slice(0).coef() = u0.coef();
  double t = 0.0;
  const int n = g.n();
  for (int node = 1; node <= output_steps; ++node) {
    for (int sub = 0; sub < substeps; ++sub) {
      const auto k1 = stage_rhs(w, t);
      std::vector<Complex> tmp(n);
      for (int i = 0; i < n; ++i) tmp[i] = w[i] + 0.5 * h * k1[i];
      const auto k2 = stage_rhs(tmp, t + 0.5 * h);
      for (int i = 0; i < n; ++i) tmp[i] = w[i] + 0.5 * h * k2[i];
      const auto k3 = stage_rhs(tmp, t + 0.5 * h);
      for (int i = 0; i < n; ++i) tmp[i] = w[i] + h * k3[i];
      const auto k4 = stage_rhs(tmp, t + h);
      for (int i = 0; i < n; ++i)
        w[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      t += h;
    }
    auto c = w;
    const double t_node = t_end * node / output_steps;
    rotate(g, c, t_node);
    out.slice(node).coef() = std::move(c);
  }
  return out;
}

}  // namespace paraairy
