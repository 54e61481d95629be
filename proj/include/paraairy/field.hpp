#pragma once

#include <cstddef>
#include <vector>

#include "paraairy/grid.hpp"

namespace paraairy {

/// One time slice of a complex function on a periodic grid. Frequency-side
/// coefficients are the canonical representation; space samples are
/// materialized on demand. With c_m the coefficient at mode m,
/// u(x) = sum_m c_m e^{i xi_m x}.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridPtr grid) : grid_(std::move(grid)), coef_(grid_->n()) {}
  SpectralField(GridPtr grid, std::vector<Complex> coefficients)
      : grid_(std::move(grid)), coef_(std::move(coefficients)) {}

  static SpectralField from_samples(GridPtr grid, const std::vector<Complex>& samples);

  const GridPtr& grid() const { return grid_; }
  int n() const { return grid_ ? grid_->n() : 0; }
  const std::vector<Complex>& coef() const { return coef_; }
  std::vector<Complex>& coef() { return coef_; }

  std::vector<Complex> samples() const;

  /// Continuum L2 norm over one period: sqrt(L * sum |c_m|^2).
  double l2_norm() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  SpectralField& operator*=(Complex s);

 private:
  GridPtr grid_;
  std::vector<Complex> coef_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(Complex s, SpectralField a);

/// d^order/dx^order via multiplication by (i xi)^order.
SpectralField derivative(const SpectralField& u, int order);

/// Frequency-diagonal operator given by a real symbol sampled in FFT order.
SpectralField apply_symbol(const SpectralField& u, const std::vector<double>& symbol);

/// Pointwise physical-space product.
SpectralField multiply(const SpectralField& a, const SpectralField& b);

/// Pointwise exponential exp(scale * a).
SpectralField exp_field(const SpectralField& a, double scale);

/// A time-indexed sequence of slices over the unit interval, t_i = i/m_steps.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(GridPtr grid, int m_steps);
  explicit SpaceTimeField(std::vector<SpectralField> slices);

  int steps() const { return static_cast<int>(slices_.size()) - 1; }
  int slice_count() const { return static_cast<int>(slices_.size()); }
  double dt() const { return 1.0 / steps(); }
  double time(int i) const { return static_cast<double>(i) / steps(); }

  const GridPtr& grid() const { return slices_.front().grid(); }
  const SpectralField& slice(int i) const { return slices_[static_cast<std::size_t>(i)]; }
  SpectralField& slice(int i) { return slices_[static_cast<std::size_t>(i)]; }

  SpaceTimeField& operator+=(const SpaceTimeField& o);
  SpaceTimeField& operator-=(const SpaceTimeField& o);
  SpaceTimeField& operator*=(double s);

  /// Largest L2 slice norm.
  double linf_l2_norm() const;
  /// Trapezoid-in-time L2 norm of all slices, i.e. the L2([0,1]xR) norm.
  double l2_l2_norm() const;

 private:
  std::vector<SpectralField> slices_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(double s, SpaceTimeField a);

SpaceTimeField derivative(const SpaceTimeField& u, int order);
SpaceTimeField apply_symbol(const SpaceTimeField& u, const std::vector<double>& symbol);
SpaceTimeField multiply(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField exp_field(const SpaceTimeField& a, double scale);

/// Constant-in-time extension of a single slice.
SpaceTimeField constant_in_time(const SpectralField& u, int m_steps);

/// Trapezoid weights on the uniform unit time grid with m+1 nodes.
std::vector<double> trapezoid_weights(int slice_count);

}  // namespace paraairy
