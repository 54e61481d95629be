#pragma once

#include <memory>
#include <vector>

#include "paraairy/cubes.hpp"
#include "paraairy/field.hpp"
#include "paraairy/lp.hpp"

namespace paraairy {

/// Immutable per-grid bundle of the multiplier tables and cube partitions
/// every norm and solver routine consumes.
struct Context {
  GridPtr grid;
  std::shared_ptr<const LpCalculus> lp;
  std::shared_ptr<const CubeSet> cubes;

  int j_max() const { return grid->j_max(); }
};

Context make_context(GridPtr grid);
Context make_context(int n_points, double length);

enum class InnerNorm {
  kL2tx,    // ||u chi_Q||_{L2([0,1] x R)}
  kLinfL2,  // sup_t ||u(t) chi_Q||_{L2}
  kL2Cube,  // ||u chi_Q||_{L2([0,1] x Q)}, sharp restriction to the cube
  kX,       // local energy norm of the windowed piece
};

struct PartitionNormResult {
  double value = 0.0;
  bool degenerate = false;  // single cube covering the domain more than once
};

PartitionNormResult l2_partition_norm(const Context& ctx, const SpaceTimeField& u, int level,
                                      InnerNorm inner);
/// Spatial-only version with the plain L2 inner norm.
PartitionNormResult l2_partition_norm(const Context& ctx, const SpectralField& u, int level);

/// Local energy norm: sup over levels 0..level_max and cubes Q of
/// 2^(-l/2) ||u||_{L2([0,1] x Q)} (sharp cubes, trapezoid in time).
double x_norm(const Context& ctx, const SpaceTimeField& u);

/// 2^j x_norm(u) + sup_t ||u(t)||_{L2}.
double xj_norm(const Context& ctx, const SpaceTimeField& u, int j);

/// Dyadic-weighted solution norm. Per-band entries are 2^(js) ||S_j u||
/// so that their squares sum to the squared total.
double l2xs_norm(const Context& ctx, const SpaceTimeField& u, double s,
                 std::vector<double>* per_band = nullptr);

double l2hs_norm(const Context& ctx, const SpectralField& u, double s,
                 std::vector<double>* per_band = nullptr);

/// ||u||_{l2_{2j} X_j}: the level-2j square partition of the band-weighted
/// local energy norms, without the dyadic weight or band projection.
double l2_partition_xj_norm(const Context& ctx, const SpaceTimeField& u, int j);

/// sup_t l2hs_norm(u(t), s); right-hand side of the low-frequency probe.
double linf_l2hs_norm(const Context& ctx, const SpaceTimeField& u, double s);

/// Windowed-cube upper bound for the atomic forcing norm:
/// min over levels l of sum_Q 2^(l/2) ||f chi_Q||_{L2}.
double y_upper(const Context& ctx, const SpaceTimeField& f);

/// min(2^-j y_upper(f), ||f||_{L1_t L2_x}).
double yj_surrogate(const Context& ctx, const SpaceTimeField& f, int j);

double l2ys_surrogate(const Context& ctx, const SpaceTimeField& f, double s,
                      std::vector<double>* per_band = nullptr);

/// Evaluated norms of a state (and optionally the forcing that produced it).
struct NormReport {
  double l2hs = 0.0;  // of the t = 0 slice
  double l2xs = 0.0;
  double x = 0.0;
  double linf_l2 = 0.0;
  double y_surrogate = 0.0;        // of forcing when present, else of u
  double l2ys_surrogate = 0.0;
  bool has_forcing = false;
  double s = 0.0;
  std::vector<double> l2xs_band;
  std::vector<double> l2ys_band;
  std::vector<double> l2hs_band;
};

NormReport make_norm_report(const Context& ctx, const SpaceTimeField& u,
                            const SpaceTimeField* forcing, double s);

}  // namespace paraairy
