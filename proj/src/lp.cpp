#include "paraairy/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "paraairy/errors.hpp"

namespace paraairy {

double lp_transition(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double lp_phi0(double xi) {
  const double t = std::abs(xi);
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  return lp_transition(2.0 - t);
}

double lp_symbol(int j, double xi) {
  if (j < 0) throw SolverError(ErrorCode::kInvalidArgument, "band index must be >= 0");
  if (j == 0) return lp_phi0(xi);
  // ldexp scaling is exact, so adjacent bands telescope exactly.
  return lp_phi0(std::ldexp(xi, -j)) - lp_phi0(std::ldexp(xi, -j + 1));
}

LpCalculus::LpCalculus(GridPtr grid) : grid_(std::move(grid)) {
  const int n = grid_->n();
  const int jm = grid_->j_max();
  zero_.assign(n, 0.0);
  band_.resize(jm + 1);
  wide_.resize(jm + 1);
  below_.resize(jm + 3);
  for (int j = 0; j <= jm; ++j) {
    band_[j].resize(n);
    wide_[j].resize(n);
    for (int i = 0; i < n; ++i) {
      const double xi = grid_->xi(i);
      band_[j][i] = lp_symbol(j, xi);
      wide_[j][i] = (j == 0) ? lp_phi0(0.5 * xi)
                             : lp_phi0(std::ldexp(xi, -j - 1)) - lp_phi0(std::ldexp(xi, -j + 2));
    }
  }
  for (int j = 0; j <= jm + 2; ++j) {
    below_[j].resize(n);
    for (int i = 0; i < n; ++i) {
      below_[j][i] = (j <= 0) ? 0.0 : lp_phi0(std::ldexp(grid_->xi(i), -(j - 1)));
    }
  }
  resolve_ = below_[jm + 1];
}

const std::vector<double>& LpCalculus::band_symbol(int j) const {
  if (j < 0 || j > j_max())
    throw SolverError(ErrorCode::kInvalidArgument, "unresolved band " + std::to_string(j));
  return band_[j];
}

const std::vector<double>& LpCalculus::wide_symbol(int j) const {
  if (j < 0 || j > j_max())
    throw SolverError(ErrorCode::kInvalidArgument, "unresolved band " + std::to_string(j));
  return wide_[j];
}

const std::vector<double>& LpCalculus::below_symbol(int j) const {
  if (j <= 0) return zero_;
  if (j > j_max() + 2)
    throw SolverError(ErrorCode::kInvalidArgument, "low-pass level out of range");
  return below_[j];
}

SpectralField LpCalculus::project_band(const SpectralField& u, int j) const {
  return apply_symbol(u, band_symbol(j));
}

SpectralField LpCalculus::project_below(const SpectralField& u, int j) const {
  if (j <= 0) return SpectralField(u.grid());
  return apply_symbol(u, below_symbol(j));
}

SpectralField LpCalculus::project_wide(const SpectralField& u, int j) const {
  return apply_symbol(u, wide_symbol(j));
}

SpectralField LpCalculus::project_resolved(const SpectralField& u) const {
  return apply_symbol(u, resolve_);
}

SpaceTimeField LpCalculus::project_band(const SpaceTimeField& u, int j) const {
  return apply_symbol(u, band_symbol(j));
}

SpaceTimeField LpCalculus::project_below(const SpaceTimeField& u, int j) const {
  if (j <= 0) return SpaceTimeField(u.grid(), u.steps());
  return apply_symbol(u, below_symbol(j));
}

SpaceTimeField LpCalculus::project_wide(const SpaceTimeField& u, int j) const {
  return apply_symbol(u, wide_symbol(j));
}

SpaceTimeField LpCalculus::project_resolved(const SpaceTimeField& u) const {
  return apply_symbol(u, resolve_);
}

SpaceTimeField paraproduct(const LpCalculus& lp, const SpaceTimeField& a,
                           const SpaceTimeField& u) {
  if (a.grid()->n() != u.grid()->n() || a.grid()->length() != u.grid()->length() ||
      a.steps() != u.steps())
    throw SolverError(ErrorCode::kInvalidArgument, "paraproduct operands on different grids");
  SpaceTimeField out(u.grid(), u.steps());
  for (int i = 0; i < u.slice_count(); ++i) {
    SpectralField acc(u.grid());
    for (int j = 5; j <= lp.j_max(); ++j) {
      const auto low = lp.project_below(a.slice(i), j - 4);
      const auto band = lp.project_band(u.slice(i), j);
      acc += multiply(low, band);
    }
    out.slice(i) = std::move(acc);
  }
  return out;
}

}  // namespace paraairy
