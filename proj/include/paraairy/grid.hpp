#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace paraairy {

using Complex = std::complex<double>;

/// Periodic spatial grid on [-L/2, L/2) with a power-of-two point count.
/// Frequencies are stored in FFT order: index i maps to mode number
/// m = i for i < n/2 and m = i - n otherwise, with xi_m = 2*pi*m/L.
///
/// Band bookkeeping: the highest fully resolved dyadic band is
/// j_max = floor(log2(xi_max)) - 1 with xi_max = pi*n/L, so that
/// supp(phi_j) = [2^(j-1), 2^(j+1)] fits under xi_max for every j <= j_max.
class Grid {
 public:
  Grid(int n_points, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return dx_; }
  double x0() const { return -0.5 * length_; }
  double x(int i) const { return x0() + i * dx_; }

  int mode_number(int idx) const { return idx < n_ / 2 ? idx : idx - n_; }
  double xi(int idx) const { return two_pi_over_l_ * mode_number(idx); }
  double xi_max() const { return xi_max_; }
  int j_max() const { return j_max_; }

  /// Unscaled DFT: forward computes sum_i a_i e^{-2 pi i k i / n}; inverse
  /// uses the opposite sign and no 1/n factor.
  void fft(Complex* data, bool inverse) const;

 private:
  int n_;
  double length_;
  double dx_;
  double two_pi_over_l_;
  double xi_max_;
  int j_max_;
  std::vector<int> bitrev_;
  std::vector<Complex> roots_;  // e^{-2 pi i k / n}, k in [0, n/2)
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n_points, double length);

}  // namespace paraairy
