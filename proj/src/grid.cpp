#include "paraairy/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paraairy {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int n_points, double length) : n_(n_points), length_(length) {
  if (!is_power_of_two(n_points)) throw std::invalid_argument("grid size must be a power of two");
  if (!(length > 0.0)) throw std::invalid_argument("grid length must be positive");
  dx_ = length_ / n_;
  two_pi_over_l_ = 2.0 * std::numbers::pi / length_;
  xi_max_ = std::numbers::pi * n_ / length_;
  j_max_ = static_cast<int>(std::floor(std::log2(xi_max_))) - 1;
  if (j_max_ < 0) throw std::invalid_argument("grid resolves no dyadic band; increase n/length");

  bitrev_.assign(n_, 0);
  int log2n = 0;
  while ((1 << log2n) < n_) ++log2n;
  for (int i = 0; i < n_; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b)
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    bitrev_[i] = r;
  }
  roots_.assign(n_ / 2, Complex(0.0, 0.0));
  for (int k = 0; k < n_ / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * k / n_;
    roots_[k] = Complex(std::cos(ang), std::sin(ang));
  }
}

void Grid::fft(Complex* a, bool inverse) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    const int j = bitrev_[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int stride = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        Complex w = roots_[static_cast<std::size_t>(k) * stride];
        if (inverse) w = std::conj(w);
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

GridPtr make_grid(int n_points, double length) {
  return std::make_shared<const Grid>(n_points, length);
}

}  // namespace paraairy
