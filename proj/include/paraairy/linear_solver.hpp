#pragma once

#include <functional>
#include <vector>

#include "paraairy/field.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// e^{i xi^3 t} multiplier: the solution map of (dt + dx^3) u = 0.
SpectralField airy_evolve(const SpectralField& u, double t);

/// Cached rotations e^{+-i xi^3 t_i} at the nodes t_i = (i/m) * t_end.
class AiryPropagator {
 public:
  AiryPropagator(GridPtr grid, int m_steps, double t_end = 1.0);

  int steps() const { return steps_; }
  double t_end() const { return t_end_; }
  const std::vector<Complex>& forward(int node) const { return fwd_[node]; }
  const std::vector<Complex>& backward(int node) const { return bwd_[node]; }

 private:
  int steps_;
  double t_end_;
  std::vector<std::vector<Complex>> fwd_, bwd_;
};

/// u(t) = U(t) u0 + int_0^t U(t-s) f(s) ds on the unit interval sampled at
/// the forcing's nodes. The integral is evaluated in the interaction picture
/// with fourth-order node quadrature (integrals of the cubic interpolant), so
/// the stiff dispersion is handled exactly and only the forcing is quadratured.
SpaceTimeField duhamel_solve(const SpectralField& u0, const SpaceTimeField& f);
SpaceTimeField duhamel_solve(const SpectralField& u0, const SpaceTimeField& f,
                             const AiryPropagator& prop);

/// Fourth-order time differencing on the node grid (one-sided at the ends).
/// Meant for slowly varying coefficient fields, not for dispersive solutions.
SpaceTimeField time_derivative(const SpaceTimeField& u);

/// (dt + dx^3) u evaluated stably for dispersive fields: differences the
/// interaction-picture transform U(-t) u, then rotates back.
SpaceTimeField airy_operator(const SpaceTimeField& u);
SpaceTimeField airy_operator(const SpaceTimeField& u, const AiryPropagator& prop);

/// Conjugation remainder
///   R(g,h) = (1/3 (dt+dx^3) g - 1/3 gx gxx + 1/27 gx^3) h
///          + (gxx - 1/3 gx^2) hx.
/// (dt+dx^3) g comes from evolution_g when supplied, otherwise from the
/// time-differencing stencil plus the spectral third derivative.
SpaceTimeField remainder_R(const SpaceTimeField& g, const SpaceTimeField& h,
                           const SpaceTimeField* evolution_g = nullptr);

/// Inputs of one frequency-localized solve.
struct BandSystem {
  int j = 0;
  SpectralField u0j;
  SpaceTimeField fj;
  SpaceTimeField a_low;            // a_{<j-4}
  SpaceTimeField a_low_evolution;  // (dt+dx^3) a_{<j-4}
  SpaceTimeField exp_plus;         // e^{+a/3}
  SpaceTimeField exp_minus;        // e^{-a/3}
};

/// Builds the exponentials (and, when evolution_a is absent, the stencil
/// fallback for (dt+dx^3) a).
BandSystem make_band_system(const Context& ctx, int j, SpectralField u0j, SpaceTimeField fj,
                            SpaceTimeField a_low, const SpaceTimeField* evolution_a = nullptr);

/// One conjugated approximate solve: v_j from a plain Airy/Duhamel problem
/// with exponentially normalized data and forcing, widened back to the band.
SpaceTimeField conjugated_band_solve(const Context& ctx, const BandSystem& sys);

/// (dt + dx^3 - dx a dxx) u_j - f_j with the time derivative taken in the
/// interaction picture.
SpaceTimeField band_residual(const Context& ctx, const SpaceTimeField& u_j,
                             const BandSystem& sys);

struct CorrectionTrace {
  int band = 0;
  bool converged = false;
  std::vector<double> solution_norms;  // ||utilde^(n)||_{Linf L2}
  std::vector<double> forcing_norms;   // ||f^(n)||_{L2 L2}
  std::vector<double> data_norms;      // ||u0^(n)||_{L2}
  std::vector<double> residual_norms;  // pair norm r_n driving the stopping rule
  std::vector<double> ratios;          // r_{n+1} / r_n
};

struct BandSolveResult {
  SpaceTimeField u;         // sum of the correction series
  SpaceTimeField rhs;       // (dt+dx^3) u, assembled algebraically
  SpaceTimeField residual;  // remaining (dt+dx^3-dx a dxx) u - f_j
  CorrectionTrace trace;
};

/// Correction series u_j = sum_n utilde^(n): each step solves with the
/// residual data/forcing pair of the previous one. The residual is evaluated
/// through the exact conjugation identity, so no dispersive field is ever
/// time-differenced. Throws NO_CONTRACTION after three consecutive increases.
BandSolveResult band_correction_iterate(const Context& ctx, const BandSystem& sys, int n_max,
                                        double tol, const AiryPropagator& prop);

struct ParadiffSolution {
  SpaceTimeField u;
  SpaceTimeField rhs;            // (dt+dx^3) u
  SpaceTimeField residual;       // (dt+dx^3 - T_dxa dxx) u - f, when computed
  bool has_residual = false;
  std::vector<CorrectionTrace> traces;
};

/// Band sum in index order. principal(u) must apply the frozen-coefficient
/// principal operator sum_j dx a_{<j-4} S_j dxx; when given (with the full
/// forcing f), the global equation residual is attached.
ParadiffSolution assemble_paradiff_solution(
    std::vector<BandSolveResult> bands,
    const std::function<SpaceTimeField(const SpaceTimeField&)>* principal = nullptr,
    const SpaceTimeField* f = nullptr);

}  // namespace paraairy
