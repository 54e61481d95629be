#include "paraairy/linear_solver.hpp"

#include <cmath>

#include "paraairy/errors.hpp"

namespace paraairy {

SpectralField airy_evolve(const SpectralField& u, double t) {
  SpectralField out = u;
  const Grid& g = *u.grid();
  for (int i = 0; i < g.n(); ++i) {
    const double xi = g.xi(i);
    const double phase = xi * xi * xi * t;
    out.coef()[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  return out;
}

AiryPropagator::AiryPropagator(GridPtr grid, int m_steps, double t_end)
    : steps_(m_steps), t_end_(t_end) {
  const int n = grid->n();
  fwd_.resize(m_steps + 1);
  bwd_.resize(m_steps + 1);
  for (int node = 0; node <= m_steps; ++node) {
    const double t = static_cast<double>(node) / m_steps * t_end_;
    fwd_[node].resize(n);
    bwd_[node].resize(n);
    for (int i = 0; i < n; ++i) {
      const double xi = grid->xi(i);
      const double phase = xi * xi * xi * t;
      fwd_[node][i] = Complex(std::cos(phase), std::sin(phase));
      bwd_[node][i] = std::conj(fwd_[node][i]);
    }
  }
}

namespace {

void mode_multiply(std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

/// Integral over [node, node+1] of the cubic through four consecutive nodes,
/// in units of the step size.
void accumulate_interval(std::vector<Complex>& acc, const std::vector<std::vector<Complex>>& phi,
                         int node, int m, double h) {
  static constexpr double kInner[4] = {-1.0 / 24, 13.0 / 24, 13.0 / 24, -1.0 / 24};
  static constexpr double kStart[4] = {9.0 / 24, 19.0 / 24, -5.0 / 24, 1.0 / 24};
  static constexpr double kEnd[4] = {1.0 / 24, -5.0 / 24, 19.0 / 24, 9.0 / 24};
  const double* w;
  int base;
  if (node == 0) {
    w = kStart;
    base = 0;
  } else if (node == m - 1) {
    w = kEnd;
    base = m - 3;
  } else {
    w = kInner;
    base = node - 1;
  }
  for (int p = 0; p < 4; ++p) {
    const double c = w[p] * h;
    const auto& src = phi[base + p];
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * src[i];
  }
}

}  // namespace

SpaceTimeField duhamel_solve(const SpectralField& u0, const SpaceTimeField& f,
                             const AiryPropagator& prop) {
  const int m = f.steps();
  if (m < 3)
    throw SolverError(ErrorCode::kInvalidArgument, "duhamel solve needs at least 3 time steps");
  if (prop.t_end() != 1.0)
    throw SolverError(ErrorCode::kInvalidArgument, "duhamel solve runs on the unit interval");
  const int n = u0.grid()->n();
  // phi(s) = U(-s) f(s)
  std::vector<std::vector<Complex>> phi(m + 1);
  for (int node = 0; node <= m; ++node) {
    phi[node] = f.slice(node).coef();
    mode_multiply(phi[node], prop.backward(node));
  }
  SpaceTimeField out(u0.grid(), m);
  std::vector<Complex> acc = u0.coef();
  for (int node = 0; node <= m; ++node) {
    if (node > 0) accumulate_interval(acc, phi, node - 1, m, 1.0 / m);
    auto& c = out.slice(node).coef();
    c = acc;
    mode_multiply(c, prop.forward(node));
  }
  return out;
}

SpaceTimeField duhamel_solve(const SpectralField& u0, const SpaceTimeField& f) {
  return duhamel_solve(u0, f, AiryPropagator(f.grid(), f.steps()));
}

SpaceTimeField time_derivative(const SpaceTimeField& u) {
  const int m = u.steps();
  if (m < 4)
    throw SolverError(ErrorCode::kInvalidArgument, "time stencil needs at least 4 steps");
  const double inv = m / 12.0;  // 1 / (12 h)
  SpaceTimeField out(u.grid(), m);
  auto axpy = [&](int node, double w, int src) {
    auto& c = out.slice(node).coef();
    const auto& o = u.slice(src).coef();
    const double cw = w * inv;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += cw * o[i];
  };
  for (int node = 0; node <= m; ++node) {
    if (node >= 2 && node <= m - 2) {
      axpy(node, 1.0, node - 2);
      axpy(node, -8.0, node - 1);
      axpy(node, 8.0, node + 1);
      axpy(node, -1.0, node + 2);
    } else if (node == 0) {
      axpy(node, -25.0, 0);
      axpy(node, 48.0, 1);
      axpy(node, -36.0, 2);
      axpy(node, 16.0, 3);
      axpy(node, -3.0, 4);
    } else if (node == 1) {
      axpy(node, -3.0, 0);
      axpy(node, -10.0, 1);
      axpy(node, 18.0, 2);
      axpy(node, -6.0, 3);
      axpy(node, 1.0, 4);
    } else if (node == m - 1) {
      axpy(node, 3.0, m);
      axpy(node, 10.0, m - 1);
      axpy(node, -18.0, m - 2);
      axpy(node, 6.0, m - 3);
      axpy(node, -1.0, m - 4);
    } else {  // node == m
      axpy(node, 25.0, m);
      axpy(node, -48.0, m - 1);
      axpy(node, 36.0, m - 2);
      axpy(node, -16.0, m - 3);
      axpy(node, 3.0, m - 4);
    }
  }
  return out;
}

SpaceTimeField airy_operator(const SpaceTimeField& u, const AiryPropagator& prop) {
  const int m = u.steps();
  SpaceTimeField w(u.grid(), m);
  for (int node = 0; node <= m; ++node) {
    w.slice(node).coef() = u.slice(node).coef();
    mode_multiply(w.slice(node).coef(), prop.backward(node));
  }
  auto dtw = time_derivative(w);
  // The node stencil differentiates in the unit variable tau = t / t_end.
  if (prop.t_end() != 1.0) dtw *= 1.0 / prop.t_end();
  for (int node = 0; node <= m; ++node) mode_multiply(dtw.slice(node).coef(), prop.forward(node));
  return dtw;
}

SpaceTimeField airy_operator(const SpaceTimeField& u) {
  return airy_operator(u, AiryPropagator(u.grid(), u.steps()));
}

SpaceTimeField remainder_R(const SpaceTimeField& g, const SpaceTimeField& h,
                           const SpaceTimeField* evolution_g) {
  SpaceTimeField evol =
      evolution_g ? *evolution_g : time_derivative(g) + derivative(g, 3);
  const int n = g.grid()->n();
  std::vector<SpectralField> slices;
  slices.reserve(g.slice_count());
  for (int sl = 0; sl < g.slice_count(); ++sl) {
    const auto gx = derivative(g.slice(sl), 1).samples();
    const auto gxx = derivative(g.slice(sl), 2).samples();
    const auto ev = evol.slice(sl).samples();
    const auto hs = h.slice(sl).samples();
    const auto hx = derivative(h.slice(sl), 1).samples();
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) {
      const Complex zeroth = ev[i] / 3.0 - gx[i] * gxx[i] / 3.0 + gx[i] * gx[i] * gx[i] / 27.0;
      const Complex first = gxx[i] - gx[i] * gx[i] / 3.0;
      out[i] = zeroth * hs[i] + first * hx[i];
    }
    slices.push_back(SpectralField::from_samples(g.grid(), out));
  }
  return SpaceTimeField(std::move(slices));
}

BandSystem make_band_system(const Context& ctx, int j, SpectralField u0j, SpaceTimeField fj,
                            SpaceTimeField a_low, const SpaceTimeField* evolution_a) {
  (void)ctx;
  BandSystem sys;
  sys.j = j;
  sys.u0j = std::move(u0j);
  sys.fj = std::move(fj);
  sys.exp_plus = exp_field(a_low, 1.0 / 3.0);
  sys.exp_minus = exp_field(a_low, -1.0 / 3.0);
  sys.a_low_evolution =
      evolution_a ? *evolution_a : time_derivative(a_low) + derivative(a_low, 3);
  sys.a_low = std::move(a_low);
  return sys;
}

namespace {

/// S_{<j-4}(e^{-a/3}) for high bands; the plain exponential where the
/// projection would vanish (j <= 4), keeping the construction usable on
/// every band.
SpaceTimeField normalizer(const Context& ctx, const BandSystem& sys) {
  if (sys.j >= 5) return ctx.lp->project_below(sys.exp_minus, sys.j - 4);
  return sys.exp_minus;
}

struct ConjugateSolve {
  SpaceTimeField v;        // plain Airy solution in the conjugated frame
  SpaceTimeField w;        // e^{a/3} v, before widening
  SpaceTimeField u_tilde;  // S~_j w
};

ConjugateSolve conjugate_solve(const Context& ctx, const BandSystem& sys,
                               const SpectralField& data, const SpaceTimeField& forcing,
                               const SpaceTimeField& norm_field, const AiryPropagator& prop) {
  ConjugateSolve out;
  const auto v0 = multiply(norm_field.slice(0), data);
  const auto g = multiply(norm_field, forcing);
  out.v = duhamel_solve(v0, g, prop);
  out.w = multiply(sys.exp_plus, out.v);
  out.u_tilde = ctx.lp->project_wide(out.w, sys.j);
  return out;
}

/// Residual of the widened conjugated solution against the band equation,
/// via the exact conjugation identity (treats v as an exact Airy solution):
///   L(S~_j w) - f = [S~_j(e^{a/3} N f) - f] + S~_j R(a, w)
///                 + [S~_j(dxa wxx) - dxa (S~_j w)xx].
SpaceTimeField identity_residual(const Context& ctx, const BandSystem& sys,
                                 const ConjugateSolve& cs, const SpaceTimeField& forcing,
                                 const SpaceTimeField& norm_field) {
  const auto dxa = derivative(sys.a_low, 1);
  auto res = ctx.lp->project_wide(multiply(sys.exp_plus, multiply(norm_field, forcing)), sys.j);
  res -= forcing;
  res += ctx.lp->project_wide(remainder_R(sys.a_low, cs.w, &sys.a_low_evolution), sys.j);
  res += ctx.lp->project_wide(multiply(dxa, derivative(cs.w, 2)), sys.j);
  res -= multiply(dxa, derivative(cs.u_tilde, 2));
  return res;
}

}  // namespace

SpaceTimeField conjugated_band_solve(const Context& ctx, const BandSystem& sys) {
  const AiryPropagator prop(ctx.grid, sys.fj.steps());
  const auto nf = normalizer(ctx, sys);
  return conjugate_solve(ctx, sys, sys.u0j, sys.fj, nf, prop).u_tilde;
}

SpaceTimeField band_residual(const Context& ctx, const SpaceTimeField& u_j,
                             const BandSystem& sys) {
  (void)ctx;
  auto res = airy_operator(u_j);
  const auto dxa = derivative(sys.a_low, 1);
  res -= multiply(dxa, derivative(u_j, 2));
  res -= sys.fj;
  return res;
}

BandSolveResult band_correction_iterate(const Context& ctx, const BandSystem& sys, int n_max,
                                        double tol, const AiryPropagator& prop) {
  const auto nf = normalizer(ctx, sys);
  const auto dxa = derivative(sys.a_low, 1);

  BandSolveResult out;
  out.trace.band = sys.j;
  out.u = SpaceTimeField(ctx.grid, sys.fj.steps());

  SpectralField cur_u0 = sys.u0j;
  SpaceTimeField cur_f = sys.fj;
  const double scale0 = cur_f.l2_l2_norm() + cur_u0.l2_norm();
  if (scale0 == 0.0) {
    out.trace.converged = true;
    out.residual = SpaceTimeField(ctx.grid, sys.fj.steps());
    out.rhs = SpaceTimeField(ctx.grid, sys.fj.steps());
    return out;
  }

  int rises = 0;
  double prev_r = scale0;
  for (int n = 0; n < n_max; ++n) {
    const auto cs = conjugate_solve(ctx, sys, cur_u0, cur_f, nf, prop);
    out.u += cs.u_tilde;
    out.trace.solution_norms.push_back(cs.u_tilde.linf_l2_norm());
    const auto res = identity_residual(ctx, sys, cs, cur_f, nf);
    cur_u0 -= cs.u_tilde.slice(0);
    cur_f = -1.0 * res;
    const double r = cur_f.l2_l2_norm() + cur_u0.l2_norm();
    out.trace.forcing_norms.push_back(cur_f.l2_l2_norm());
    out.trace.data_norms.push_back(cur_u0.l2_norm());
    out.trace.residual_norms.push_back(r);
    if (n > 0) out.trace.ratios.push_back(r / prev_r);
    if (r <= tol * scale0) {
      out.trace.converged = true;
      break;
    }
    if (r > prev_r) {
      if (++rises >= 3)
        throw SolverError(ErrorCode::kNoContraction,
                          "band " + std::to_string(sys.j) + " residual rose 3 times, last r = " +
                              std::to_string(r) + " (scale " + std::to_string(scale0) + ")");
    } else {
      rises = 0;
    }
    prev_r = r;
  }
  // Remaining defect and the algebraic (dt+dx^3) image of the band sum:
  // f^(n+1) = -residual, and the forcing/residual telescope leaves
  // rhs = dxa uxx + f_j + final residual.
  out.residual = -1.0 * cur_f;
  out.rhs = multiply(dxa, derivative(out.u, 2)) + sys.fj + out.residual;
  return out;
}

ParadiffSolution assemble_paradiff_solution(
    std::vector<BandSolveResult> bands,
    const std::function<SpaceTimeField(const SpaceTimeField&)>* principal,
    const SpaceTimeField* f) {
  if (bands.empty())
    throw SolverError(ErrorCode::kInvalidArgument, "no band solutions to assemble");
  ParadiffSolution out;
  out.u = bands[0].u;
  out.rhs = bands[0].rhs;
  out.traces.push_back(bands[0].trace);
  for (std::size_t b = 1; b < bands.size(); ++b) {
    out.u += bands[b].u;
    out.rhs += bands[b].rhs;
    out.traces.push_back(bands[b].trace);
  }
  if (principal && f) {
    out.residual = out.rhs - (*principal)(out.u) - *f;
    out.has_residual = true;
  }
  return out;
}

}  // namespace paraairy
