#include "paraairy/cubes.hpp"

#include <cmath>

#include "paraairy/lp.hpp"

namespace paraairy {

namespace {

CubeLevel build_level(const Grid& g, int l) {
  CubeLevel out;
  out.level = l;
  const double nominal = std::ldexp(1.0, l);
  const int n_c = std::max(1, static_cast<int>(std::floor(g.length() / nominal + 1e-9)));
  out.cube_count = n_c;
  out.degenerate = n_c == 1 && nominal >= 2.0 * g.length();

  const int n = g.n();
  out.bounds.resize(n_c + 1);
  for (int q = 0; q <= n_c; ++q)
    out.bounds[q] = static_cast<int>(std::llround(static_cast<double>(q) * n / n_c));

  out.windows.resize(n_c);
  if (n_c == 1) {
    out.windows[0].start = 0;
    out.windows[0].chi.assign(n, 1.0);
    return out;
  }

  const double len = g.length() / n_c;
  const double dx = g.dx();
  // Raw windows: rise over [left-1/2, left+1/2], fall over [right-1/2, right+1/2].
  std::vector<double> sum_sq(n, 0.0);
  for (int q = 0; q < n_c; ++q) {
    const double left = q * len;  // relative to x0
    const int start = static_cast<int>(std::ceil((left - 0.5) / dx - 1e-12));
    const int stop = static_cast<int>(std::floor((left + len + 0.5) / dx + 1e-12));
    auto& w = out.windows[q];
    w.start = ((start % n) + n) % n;
    w.chi.resize(stop - start + 1);
    for (int t = 0; t <= stop - start; ++t) {
      const double x = (start + t) * dx;
      const double rise = lp_transition(x - left + 0.5);
      const double fall = lp_transition(left + len + 0.5 - x);
      w.chi[t] = rise * fall;
      sum_sq[(w.start + t) % n] += w.chi[t] * w.chi[t];
    }
  }
  for (int q = 0; q < n_c; ++q) {
    auto& w = out.windows[q];
    for (std::size_t t = 0; t < w.chi.size(); ++t)
      w.chi[t] /= std::sqrt(sum_sq[(w.start + static_cast<int>(t)) % n]);
  }
  return out;
}

}  // namespace

CubeSet::CubeSet(GridPtr grid) : grid_(std::move(grid)) {
  level_max_ = static_cast<int>(std::ceil(std::log2(grid_->length()) - 1e-12));
  if (level_max_ < 0) level_max_ = 0;
  levels_.reserve(level_max_ + 1);
  for (int l = 0; l <= level_max_; ++l) levels_.push_back(build_level(*grid_, l));
}

const CubeLevel& CubeSet::level(int l) const {
  if (l < 0) l = 0;
  if (l > level_max_) l = level_max_;
  return levels_[l];
}

}  // namespace paraairy
