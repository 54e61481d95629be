#pragma once

#include <cstdint>
#include <vector>

#include "paraairy/admission.hpp"
#include "paraairy/field.hpp"
#include "paraairy/linear_solver.hpp"
#include "paraairy/nonlinearity.hpp"
#include "paraairy/norms.hpp"
#include "paraairy/rescale.hpp"

namespace paraairy {

struct SolverConfig {
  double s = 4.0;
  int m_steps = 128;            // time samples of the rescaled unit-interval solve
  double theta = -1.0;          // high-part target; < 0 means 0.1 * delta_threshold
  int k_max = 8;
  int k_force = -1;             // >= 0 skips the k search (shared-k comparisons)
  double delta_threshold = 0.1;
  double outer_tol = 1e-7;
  int outer_max_iter = 40;
  double inner_tol = 1e-8;
  int inner_max_iter = 25;
  int n_cap = 16384;            // rescaled grid point cap
  std::uint64_t battery_seed = 2026;
  bool run_reference_check = false;
  int reference_substeps = 4;   // reference integrator substeps per output node

  double theta_or_default() const { return theta >= 0.0 ? theta : 0.1 * delta_threshold; }
};

struct OuterIterationRecord {
  int iteration = 0;
  double w_l2xs = 0.0;        // ||v^(n+1)||
  double diff_l2xs = 0.0;     // ||v^(n+1) - v^(n)||
  double ratio = 0.0;         // quotient of consecutive diffs (0 on the first)
  double dxa_norm = 0.0;      // admission quantities of the input state
  double para_surrogate = 0.0;
  double h_ys_surrogate = 0.0;  // l2Ys surrogate of the assembled forcing
  double band_residual_l2 = 0.0;
};

struct ConvergenceTrace {
  int k = 0;
  double lambda = 0.0, s0 = 0.0, gamma = 0.0, sigma = 0.0;
  double theta = 0.0;
  double u0_l2hs = 0.0;          // original data norm, the stopping scale
  double high_l2hs = 0.0;        // rescaled high part at the chosen k
  double truncated_l2 = 0.0;     // data mass beyond the resolved bands
  bool converged = false;
  std::vector<OuterIterationRecord> records;
  double substitution_residual = 0.0;  // relative, on the returned solution
  double boundary_mass_fraction = 0.0;
  bool reference_checked = false;
  double reference_linf_l2 = 0.0;
};

/// A state of the outer iteration together with its algebraically known
/// evolution image (dt + dx^3) v; the image feeds the conjugation remainder
/// and the paraproduct hypothesis without any time differencing.
struct EvolvedState {
  SpaceTimeField v;
  SpaceTimeField rhs;
};

struct OuterMapResult {
  EvolvedState w;
  SpaceTimeField forcing;  // resolved H(x, v)
  AdmissionReport admission;
  std::vector<CorrectionTrace> band_traces;
  double band_residual_l2 = 0.0;
};

/// One application of the solution map: admission check on v, assembly of
/// a(v) and H(x, v), frequency-localized solves, band sum.
/// Throws ADMISSION_FAILED when the input state fails the delta gates.
OuterMapResult outer_map(const Context& ctx, const BadGoodSplit& split,
                         const EvolvedState& state, const SpectralField& v0,
                         const SpectralField& u0_low, double s, double sigma,
                         const SolverConfig& config, const AiryPropagator& prop);

struct SolveResult {
  SpaceTimeField solution;  // original variables; times are i/M * t_end
  double t_end = 0.0;       // 2^(-3k)
  ConvergenceTrace trace;
  NormReport report;        // of the final rescaled state and its forcing
  double mizohata = 0.0;    // of dx a(v) at t = 0 (zero when no bad terms)
  SpaceTimeField rescaled_v;  // final unit-interval state (difference probes)
  SpectralField rescaled_low;
};

/// End-to-end pipeline: k selection, rescale/split, outer fixed-point
/// iteration from v = 0, unrescale.
SolveResult solve(const Context& ctx, const SpectralField& u0, const PolynomialNonlinearity& f,
                  const SolverConfig& config);

/// Relative substitution residual ||(dt+dx^3) u - F(u)|| / (1 + ||u||),
/// with the time derivative taken in the interaction picture and F band-
/// truncated to the resolved range. t_end is the real length of the sampled
/// interval.
double substitution_residual(const Context& ctx, const PolynomialNonlinearity& f,
                             const SpaceTimeField& u, double t_end);

struct LipschitzResult {
  int k = 0;
  bool identical = false;  // zero data difference; ratios reported as 0
  double v_ratio = 0.0;    // rescaled-frame difference quotient
  double u_ratio = 0.0;    // rescaled solution (v + u0 low) quotient
};

/// Solves for both data sets at a common k and returns difference quotients
/// measured in l2Xs against the l2Hs data distance.
LipschitzResult lipschitz_probe(const Context& ctx, const SpectralField& u0_a,
                                const SpectralField& u0_b, const PolynomialNonlinearity& f,
                                const SolverConfig& config);

}  // namespace paraairy
