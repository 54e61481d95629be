#include "paraairy/field.hpp"

#include <cmath>
#include <stdexcept>

namespace paraairy {

namespace {
void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid() && (a.grid() == nullptr || b.grid() == nullptr ||
                               a.grid()->n() != b.grid()->n() ||
                               a.grid()->length() != b.grid()->length()))
    throw std::invalid_argument("grid mismatch");
}
}  // namespace

SpectralField SpectralField::from_samples(GridPtr grid, const std::vector<Complex>& samples) {
  const int n = grid->n();
  if (static_cast<int>(samples.size()) != n) throw std::invalid_argument("sample count mismatch");
  SpectralField out(std::move(grid));
  out.coef_ = samples;
  out.grid_->fft(out.coef_.data(), false);
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    // The (-1)^m factor re-references phases to x0 = -L/2; it is exact.
    const double sign = (i & 1) ? -inv_n : inv_n;
    out.coef_[i] *= sign;
  }
  return out;
}

std::vector<Complex> SpectralField::samples() const {
  const int n = grid_->n();
  std::vector<Complex> out(coef_);
  for (int i = 1; i < n; i += 2) out[i] = -out[i];
  grid_->fft(out.data(), true);
  return out;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coef_) s += std::norm(c);
  return std::sqrt(grid_->length() * s);
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_same_grid(*this, o);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_same_grid(*this, o);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coef_) c *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& c : coef_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

SpectralField derivative(const SpectralField& u, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative order must be 1, 2 or 3");
  SpectralField out = u;
  const Grid& g = *u.grid();
  for (int i = 0; i < g.n(); ++i) {
    const Complex ixi(0.0, g.xi(i));
    Complex m = ixi;
    for (int p = 1; p < order; ++p) m *= ixi;
    out.coef()[i] *= m;
  }
  return out;
}

SpectralField apply_symbol(const SpectralField& u, const std::vector<double>& symbol) {
  SpectralField out = u;
  for (std::size_t i = 0; i < out.coef().size(); ++i) out.coef()[i] *= symbol[i];
  return out;
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  auto sa = a.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] *= sb[i];
  return SpectralField::from_samples(a.grid(), sa);
}

SpectralField exp_field(const SpectralField& a, double scale) {
  auto s = a.samples();
  for (auto& v : s) v = std::exp(scale * v);
  return SpectralField::from_samples(a.grid(), s);
}

SpaceTimeField::SpaceTimeField(GridPtr grid, int m_steps) {
  if (m_steps < 1) throw std::invalid_argument("need at least one time step");
  slices_.assign(m_steps + 1, SpectralField(grid));
}

SpaceTimeField::SpaceTimeField(std::vector<SpectralField> slices) : slices_(std::move(slices)) {
  if (slices_.size() < 2) throw std::invalid_argument("need at least two time slices");
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
  for (int i = 0; i < slice_count(); ++i) slices_[i] += o.slice(i);
  return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
  for (int i = 0; i < slice_count(); ++i) slices_[i] -= o.slice(i);
  return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(double s) {
  for (auto& sl : slices_) sl *= s;
  return *this;
}

double SpaceTimeField::linf_l2_norm() const {
  double best = 0.0;
  for (const auto& sl : slices_) best = std::max(best, sl.l2_norm());
  return best;
}

double SpaceTimeField::l2_l2_norm() const {
  const auto w = trapezoid_weights(slice_count());
  double s = 0.0;
  for (int i = 0; i < slice_count(); ++i) {
    const double a = slices_[i].l2_norm();
    s += w[i] * a * a;
  }
  return std::sqrt(s);
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
SpaceTimeField operator*(double s, SpaceTimeField a) { return a *= s; }

namespace {
template <typename Fn>
SpaceTimeField map_slices(const SpaceTimeField& u, Fn&& fn) {
  std::vector<SpectralField> out;
  out.reserve(u.slice_count());
  for (int i = 0; i < u.slice_count(); ++i) out.push_back(fn(u.slice(i)));
  return SpaceTimeField(std::move(out));
}
}  // namespace

SpaceTimeField derivative(const SpaceTimeField& u, int order) {
  return map_slices(u, [&](const SpectralField& s) { return derivative(s, order); });
}

SpaceTimeField apply_symbol(const SpaceTimeField& u, const std::vector<double>& symbol) {
  return map_slices(u, [&](const SpectralField& s) { return apply_symbol(s, symbol); });
}

SpaceTimeField multiply(const SpaceTimeField& a, const SpaceTimeField& b) {
  std::vector<SpectralField> out;
  out.reserve(a.slice_count());
  for (int i = 0; i < a.slice_count(); ++i) out.push_back(multiply(a.slice(i), b.slice(i)));
  return SpaceTimeField(std::move(out));
}

SpaceTimeField exp_field(const SpaceTimeField& a, double scale) {
  return map_slices(a, [&](const SpectralField& s) { return exp_field(s, scale); });
}

SpaceTimeField constant_in_time(const SpectralField& u, int m_steps) {
  return SpaceTimeField(std::vector<SpectralField>(m_steps + 1, u));
}

std::vector<double> trapezoid_weights(int slice_count) {
  const int m = slice_count - 1;
  std::vector<double> w(slice_count, 1.0 / m);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace paraairy
