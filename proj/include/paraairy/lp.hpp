#pragma once

#include <vector>

#include "paraairy/field.hpp"
#include "paraairy/grid.hpp"

namespace paraairy {

/// Smooth step: 0 for t <= 0, 1 for t >= 1, h(t)/(h(t)+h(1-t)) in between
/// with h(t) = exp(-1/t).
double lp_transition(double t);

/// The fixed cutoff profile: 1 on [-1,1], 0 for |xi| >= 2, smooth in between.
double lp_phi0(double xi);

/// Band symbol phi_j: phi_0 for j = 0, else phi_0(2^-j xi) - phi_0(2^-j+1 xi).
double lp_symbol(int j, double xi);

/// Per-grid Littlewood-Paley multiplier tables: bands S_j for j <= j_max,
/// widened projectors tilde S_j with S_j tilde S_j = S_j exactly, the
/// telescoped low-pass S_{<j}, and the resolved-range cutoff
/// sum_{j<=j_max} phi_j = phi_0(2^-j_max xi).
class LpCalculus {
 public:
  explicit LpCalculus(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  int j_max() const { return grid_->j_max(); }

  const std::vector<double>& band_symbol(int j) const;
  const std::vector<double>& wide_symbol(int j) const;
  /// S_{<j}; identically zero for j <= 0.
  const std::vector<double>& below_symbol(int j) const;
  const std::vector<double>& resolve_symbol() const { return resolve_; }

  SpectralField project_band(const SpectralField& u, int j) const;
  SpectralField project_below(const SpectralField& u, int j) const;
  SpectralField project_wide(const SpectralField& u, int j) const;
  /// Restriction to the resolved band range; used before/after physical-space
  /// products to keep projector identities exact.
  SpectralField project_resolved(const SpectralField& u) const;

  SpaceTimeField project_band(const SpaceTimeField& u, int j) const;
  SpaceTimeField project_below(const SpaceTimeField& u, int j) const;
  SpaceTimeField project_wide(const SpaceTimeField& u, int j) const;
  SpaceTimeField project_resolved(const SpaceTimeField& u) const;

 private:
  GridPtr grid_;
  std::vector<std::vector<double>> band_;
  std::vector<std::vector<double>> wide_;
  std::vector<std::vector<double>> below_;  // index j in [0, j_max+2]
  std::vector<double> zero_;
  std::vector<double> resolve_;
};

/// Paraproduct T_a u = sum_{j>=0} S_{<j-4} a * S_j u, slice by slice.
/// Bands with j <= 4 contribute nothing.
SpaceTimeField paraproduct(const LpCalculus& lp, const SpaceTimeField& a,
                           const SpaceTimeField& u);

}  // namespace paraairy
