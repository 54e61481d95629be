#include "paraairy/iteration.hpp"

#include <algorithm>
#include <cmath>

#include "paraairy/diagnostics.hpp"
#include "paraairy/errors.hpp"
#include "paraairy/parallel.hpp"
#include "paraairy/reference.hpp"
#include "paraairy/rng.hpp"

namespace paraairy {

namespace {

bool has_bad_terms(const BadGoodSplit& split) {
  return split.c1 != Complex(0.0, 0.0) || split.c2 != Complex(0.0, 0.0);
}

/// Fixed battery for the paraproduct-operator surrogate: one time-constant
/// unit-l2Xs field per band plus eight seeded resolved fields.
std::vector<SpaceTimeField> make_battery(const Context& ctx, int m_steps, double s,
                                         std::uint64_t seed) {
  std::vector<SpaceTimeField> out;
  const int jm = ctx.j_max();
  for (int j = 0; j <= jm + 8; ++j) {
    Rng rng(seed, static_cast<std::uint64_t>(j) + 1);
    SpectralField z(ctx.grid);
    for (auto& c : z.coef()) c = Complex(rng.normal(), rng.normal());
    z = j <= jm ? ctx.lp->project_band(z, j) : ctx.lp->project_resolved(z);
    auto st = constant_in_time(z, m_steps);
    const double nrm = l2xs_norm(ctx, st, s);
    if (nrm == 0.0) continue;
    st *= 1.0 / nrm;
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace

double dxa_admission_norm(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low, double sigma) {
  if (!has_bad_terms(split)) return 0.0;
  const auto a = coefficient_a(ctx, split, v, u0_low, 0, /*frozen=*/false);
  return l2xs_norm(ctx, derivative(a, 1), sigma - 1.0);
}

double para2_surrogate(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& rhs_v,
                       const SpectralField& u0_low, double s, int m_steps,
                       std::uint64_t battery_seed) {
  if (!has_bad_terms(split)) return 0.0;
  const auto g = coefficient_a_evolution(ctx, split, rhs_v, u0_low, 0, /*frozen=*/false);
  const auto battery = make_battery(ctx, m_steps, s, battery_seed);
  std::vector<double> values(battery.size(), 0.0);
  parallel_for(battery.size(), [&](std::size_t i) {
    values[i] = l2ys_surrogate(ctx, paraproduct(*ctx.lp, g, battery[i]), s);
  });
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

AdmissionReport admission_check(const Context& ctx, const BadGoodSplit& split,
                                const SpaceTimeField& v, const SpaceTimeField& rhs_v,
                                const SpectralField& u0_low, double s, double sigma,
                                double delta_threshold, std::uint64_t battery_seed) {
  AdmissionReport rep;
  rep.threshold = delta_threshold;
  rep.dxa_norm = dxa_admission_norm(ctx, split, v, u0_low, sigma);
  rep.para_surrogate = para2_surrogate(ctx, split, rhs_v, u0_low, s, v.steps(), battery_seed);
  rep.pass = rep.dxa_norm <= delta_threshold && rep.para_surrogate <= delta_threshold;
  return rep;
}

OuterMapResult outer_map(const Context& ctx, const BadGoodSplit& split,
                         const EvolvedState& state, const SpectralField& v0,
                         const SpectralField& u0_low, double s, double sigma,
                         const SolverConfig& config, const AiryPropagator& prop) {
  OuterMapResult out;
  out.admission = admission_check(ctx, split, state.v, state.rhs, u0_low, s, sigma,
                                  config.delta_threshold, config.battery_seed);
  if (!out.admission.pass)
    throw SolverError(ErrorCode::kAdmissionFailed,
                      "dxa = " + std::to_string(out.admission.dxa_norm) +
                          ", para2 = " + std::to_string(out.admission.para_surrogate) +
                          " vs delta = " + std::to_string(config.delta_threshold));

  const auto h = assemble_H(ctx, split, state.v, u0_low);
  out.forcing = ctx.lp->project_resolved(h);

  const int jm = ctx.j_max();
  std::vector<BandSolveResult> bands(jm + 1);
  parallel_for(jm + 1, [&](std::size_t jz) {
    const int j = static_cast<int>(jz);
    auto u0j = ctx.lp->project_band(v0, j);
    auto fj = ctx.lp->project_band(h, j);
    auto aj = coefficient_a(ctx, split, state.v, u0_low, j);
    auto aj_evol = coefficient_a_evolution(ctx, split, state.rhs, u0_low, j);
    const auto sys = make_band_system(ctx, j, std::move(u0j), std::move(fj), std::move(aj),
                                      &aj_evol);
    bands[jz] = band_correction_iterate(ctx, sys, config.inner_max_iter, config.inner_tol, prop);
  });

  const std::function<SpaceTimeField(const SpaceTimeField&)> principal =
      [&](const SpaceTimeField& w) {
        return frozen_paraproduct_dxx(ctx, split, state.v, u0_low, w);
      };
  auto sol = assemble_paradiff_solution(std::move(bands), &principal, &out.forcing);
  out.band_residual_l2 = sol.residual.l2_l2_norm();
  out.band_traces = std::move(sol.traces);
  out.w = EvolvedState{std::move(sol.u), std::move(sol.rhs)};
  return out;
}

double substitution_residual(const Context& ctx, const PolynomialNonlinearity& f,
                             const SpaceTimeField& u, double t_end) {
  const AiryPropagator prop(ctx.grid, u.steps(), t_end);
  auto res = airy_operator(u, prop);
  res -= ctx.lp->project_resolved(evaluate_F(f, u));
  return res.l2_l2_norm() / (1.0 + u.linf_l2_norm());
}

namespace {

double boundary_mass_fraction(const SpaceTimeField& u) {
  const int n = u.grid()->n();
  const int margin = std::max(1, n / 100);
  double worst = 0.0;
  for (int i = 0; i < u.slice_count(); ++i) {
    const auto s = u.slice(i).samples();
    double total = 0.0, edge = 0.0;
    for (int p = 0; p < n; ++p) {
      const double m = std::norm(s[p]);
      total += m;
      if (p < margin || p >= n - margin) edge += m;
    }
    if (total > 0.0) worst = std::max(worst, edge / total);
  }
  return worst;
}

}  // namespace

SolveResult solve(const Context& ctx, const SpectralField& u0, const PolynomialNonlinearity& f,
                  const SolverConfig& config) {
  if (!(config.s > f.s0))
    throw SolverError(ErrorCode::kInvalidArgument,
                      "s = " + std::to_string(config.s) + " is not above s0 = " +
                          std::to_string(f.s0));
  const double sigma = sigma_exponent(config.s, f);
  const double gamma = gamma_exponent(config.s, f.lambda);
  const double theta = config.theta_or_default();

  SolveResult out;
  out.trace.lambda = f.lambda;
  out.trace.s0 = f.s0;
  out.trace.gamma = gamma;
  out.trace.sigma = sigma;
  out.trace.theta = theta;
  out.trace.u0_l2hs = l2hs_norm(ctx, u0, config.s);

  int k = config.k_force;
  if (k < 0) {
    const auto ks = choose_k(ctx, u0, f, config.s, theta, config.delta_threshold, config.k_max,
                             config.n_cap, config.m_steps, config.battery_seed);
    k = ks.k;
  }
  out.trace.k = k;

  const auto rgrid = make_rescaled_grid(*ctx.grid, k, config.n_cap);
  const auto rctx = make_context(rgrid);
  const auto u0k = rescale_data(u0, rgrid, k, f.lambda);
  auto [low, high] = split_low_high(rctx, u0k);
  const auto v0 = rctx.lp->project_resolved(high);
  out.trace.truncated_l2 = (high - v0).l2_norm();
  out.trace.high_l2hs = l2hs_norm(rctx, high, config.s);

  const auto split = split_bad_good(f, k);
  const AiryPropagator prop(rgrid, config.m_steps);

  EvolvedState state{SpaceTimeField(rgrid, config.m_steps), SpaceTimeField(rgrid, config.m_steps)};
  SpaceTimeField last_forcing(rgrid, config.m_steps);
  double prev_diff = -1.0;
  int rises = 0;
  for (int n = 0; n < config.outer_max_iter; ++n) {
    auto omr = outer_map(rctx, split, state, v0, low, config.s, sigma, config, prop);
    OuterIterationRecord rec;
    rec.iteration = n;
    rec.dxa_norm = omr.admission.dxa_norm;
    rec.para_surrogate = omr.admission.para_surrogate;
    rec.band_residual_l2 = omr.band_residual_l2;
    rec.h_ys_surrogate = l2ys_surrogate(rctx, omr.forcing, config.s);
    rec.w_l2xs = l2xs_norm(rctx, omr.w.v, config.s);
    rec.diff_l2xs = l2xs_norm(rctx, omr.w.v - state.v, config.s);
    rec.ratio = prev_diff > 0.0 ? rec.diff_l2xs / prev_diff : 0.0;
    out.trace.records.push_back(rec);

    state = std::move(omr.w);
    last_forcing = std::move(omr.forcing);

    if (rec.diff_l2xs <= config.outer_tol * out.trace.u0_l2hs) {
      out.trace.converged = true;
      break;
    }
    if (prev_diff > 0.0 && rec.ratio >= 1.0) {
      if (++rises >= 3)
        throw SolverError(ErrorCode::kOuterDivergence,
                          "difference ratio >= 1 for 3 consecutive outer iterations (last " +
                              std::to_string(rec.ratio) + ")");
    } else {
      rises = 0;
    }
    prev_diff = rec.diff_l2xs;
  }

  out.rescaled_v = state.v;
  out.rescaled_low = low;
  out.report = make_norm_report(rctx, state.v, &last_forcing, config.s);

  if (has_bad_terms(split)) {
    const auto a = coefficient_a(rctx, split, state.v, low, 0, /*frozen=*/false);
    out.mizohata = mizohata_integral(derivative(a.slice(0), 1));
  }

  auto full = state.v + constant_in_time(low, config.m_steps);
  double leakage = 0.0;
  out.solution = unrescale_solution(full, ctx.grid, k, f.lambda, &leakage);
  out.t_end = std::exp2(-3.0 * k);
  out.trace.substitution_residual = substitution_residual(ctx, f, out.solution, out.t_end);
  out.trace.boundary_mass_fraction = boundary_mass_fraction(out.solution);

  if (config.run_reference_check) {
    const auto ref = reference_integrate(ctx, f, ctx.lp->project_resolved(u0), out.t_end,
                                         config.m_steps, config.reference_substeps);
    double worst = 0.0;
    for (int i = 0; i <= config.m_steps; ++i)
      worst = std::max(worst, (out.solution.slice(i) - ref.slice(i)).l2_norm());
    out.trace.reference_checked = true;
    out.trace.reference_linf_l2 = worst;
  }
  return out;
}

LipschitzResult lipschitz_probe(const Context& ctx, const SpectralField& u0_a,
                                const SpectralField& u0_b, const PolynomialNonlinearity& f,
                                const SolverConfig& config) {
  LipschitzResult out;
  int k = config.k_force;
  if (k < 0) {
    const double theta = config.theta_or_default();
    const auto ka = choose_k(ctx, u0_a, f, config.s, theta, config.delta_threshold, config.k_max,
                             config.n_cap, config.m_steps, config.battery_seed);
    const auto kb = choose_k(ctx, u0_b, f, config.s, theta, config.delta_threshold, config.k_max,
                             config.n_cap, config.m_steps, config.battery_seed);
    k = std::max(ka.k, kb.k);
  }
  out.k = k;
  SolverConfig shared = config;
  shared.k_force = k;
  const auto ra = solve(ctx, u0_a, f, shared);
  const auto rb = solve(ctx, u0_b, f, shared);

  const double denom = l2hs_norm(ctx, u0_a - u0_b, config.s);
  if (denom == 0.0) {
    out.identical = true;
    return out;
  }
  const auto rctx = make_context(ra.rescaled_v.grid());
  out.v_ratio = l2xs_norm(rctx, ra.rescaled_v - rb.rescaled_v, config.s) / denom;
  const int m = ra.rescaled_v.steps();
  const auto ua = ra.rescaled_v + constant_in_time(ra.rescaled_low, m);
  const auto ub = rb.rescaled_v + constant_in_time(rb.rescaled_low, m);
  out.u_ratio = l2xs_norm(rctx, ua - ub, config.s) / denom;
  return out;
}

}  // namespace paraairy
