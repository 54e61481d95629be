#include "paraairy/norms.hpp"

#include <algorithm>
#include <cmath>

namespace paraairy {

Context make_context(GridPtr grid) {
  Context ctx;
  ctx.grid = grid;
  ctx.lp = std::make_shared<const LpCalculus>(grid);
  ctx.cubes = std::make_shared<const CubeSet>(grid);
  return ctx;
}

Context make_context(int n_points, double length) {
  return make_context(make_grid(n_points, length));
}

namespace {

/// Physical-space view of a space-time field: per-slice squared samples and
/// the trapezoid time-integrated density.
struct Density {
  int n = 0;
  int slices = 0;
  double dx = 0.0;
  std::vector<std::vector<double>> ssq;  // [slice][i] = |u(t_s, x_i)|^2
  std::vector<double> rho;               // sum_s w_s ssq[s][i]
  std::vector<double> tw;
};

Density make_density(const SpaceTimeField& u) {
  Density d;
  d.n = u.grid()->n();
  d.slices = u.slice_count();
  d.dx = u.grid()->dx();
  d.tw = trapezoid_weights(d.slices);
  d.ssq.resize(d.slices);
  d.rho.assign(d.n, 0.0);
  for (int s = 0; s < d.slices; ++s) {
    const auto samples = u.slice(s).samples();
    auto& row = d.ssq[s];
    row.resize(d.n);
    for (int i = 0; i < d.n; ++i) row[i] = std::norm(samples[i]);
    for (int i = 0; i < d.n; ++i) d.rho[i] += d.tw[s] * row[i];
  }
  return d;
}

Density make_density(const SpectralField& u) {
  Density d;
  d.n = u.grid()->n();
  d.slices = 1;
  d.dx = u.grid()->dx();
  d.tw = {1.0};
  d.ssq.resize(1);
  const auto samples = u.samples();
  auto& row = d.ssq[0];
  row.resize(d.n);
  for (int i = 0; i < d.n; ++i) row[i] = std::norm(samples[i]);
  d.rho = row;
  return d;
}

/// X norm of a weighted density: sup over (level, sharp cube) of the scaled
/// mass. weight == nullptr means the whole field; otherwise the density is
/// rho * chi^2 over the window's support.
double piece_x_norm(const Context& ctx, const Density& d, const CubeWindow* w) {
  const int level_max = ctx.cubes->level_max();
  double best = 0.0;
  if (w == nullptr) {
    for (int l = 0; l <= level_max; ++l) {
      const auto& lv = ctx.cubes->level(l);
      const double scale = std::ldexp(1.0, -l);
      for (int q = 0; q < lv.cube_count; ++q) {
        double s = 0.0;
        for (int i = lv.bounds[q]; i < lv.bounds[q + 1]; ++i) s += d.rho[i];
        best = std::max(best, scale * s);
      }
    }
    return std::sqrt(best * d.dx);
  }
  const int len = static_cast<int>(w->chi.size());
  // Split the periodic window into at most two contiguous global runs.
  for (int l = 0; l <= level_max; ++l) {
    const auto& lv = ctx.cubes->level(l);
    const double scale = std::ldexp(1.0, -l);
    int t0 = 0;
    while (t0 < len) {
      const int g0 = (w->start + t0) % d.n;
      const int run = std::min(len - t0, d.n - g0);
      // Walk the cubes overlapping [g0, g0 + run).
      int q = static_cast<int>(std::upper_bound(lv.bounds.begin(), lv.bounds.end(), g0) -
                               lv.bounds.begin()) - 1;
      int i = g0;
      while (i < g0 + run) {
        const int stop = std::min(g0 + run, lv.bounds[q + 1]);
        double s = 0.0;
        for (int g = i; g < stop; ++g) {
          const double c = w->chi[t0 + (g - g0)];
          s += d.rho[g] * c * c;
        }
        best = std::max(best, scale * s);
        i = stop;
        ++q;
      }
      t0 += run;
    }
  }
  return std::sqrt(best * d.dx);
}

double piece_l2_l2(const Density& d, const CubeWindow& w) {
  double s = 0.0;
  for (std::size_t t = 0; t < w.chi.size(); ++t) {
    const int g = (w.start + static_cast<int>(t)) % d.n;
    s += d.rho[g] * w.chi[t] * w.chi[t];
  }
  return std::sqrt(s * d.dx);
}

double piece_l2_cube_sharp(const Density& d, const CubeWindow& w, int lo, int hi) {
  double s = 0.0;
  for (std::size_t t = 0; t < w.chi.size(); ++t) {
    const int g = (w.start + static_cast<int>(t)) % d.n;
    if (g < lo || g >= hi) continue;
    s += d.rho[g] * w.chi[t] * w.chi[t];
  }
  return std::sqrt(s * d.dx);
}

double piece_linf_l2(const Density& d, const CubeWindow& w) {
  double best = 0.0;
  for (int sl = 0; sl < d.slices; ++sl) {
    double s = 0.0;
    const auto& row = d.ssq[sl];
    for (std::size_t t = 0; t < w.chi.size(); ++t) {
      const int g = (w.start + static_cast<int>(t)) % d.n;
      s += row[g] * w.chi[t] * w.chi[t];
    }
    best = std::max(best, s);
  }
  return std::sqrt(best * d.dx);
}

double whole_l1_l2(const Density& d) {
  double acc = 0.0;
  for (int sl = 0; sl < d.slices; ++sl) {
    double s = 0.0;
    for (int i = 0; i < d.n; ++i) s += d.ssq[sl][i];
    acc += d.tw[sl] * std::sqrt(s * d.dx);
  }
  return acc;
}

double y_upper_of_density(const Context& ctx, const Density& d) {
  double best = -1.0;
  for (int l = 0; l <= ctx.cubes->level_max(); ++l) {
    const auto& lv = ctx.cubes->level(l);
    const double scale = std::ldexp(1.0, l);  // 2^(l/2) applied after sqrt
    double sum = 0.0;
    for (int q = 0; q < lv.cube_count; ++q)
      sum += std::sqrt(scale) * piece_l2_l2(d, lv.windows[q]);
    if (best < 0.0 || sum < best) best = sum;
  }
  return best < 0.0 ? 0.0 : best;
}

/// y_j of a windowed piece, evaluated from its density.
double yj_of_density(const Context& ctx, const Density& d, int j) {
  return std::min(std::ldexp(1.0, -j) * y_upper_of_density(ctx, d), whole_l1_l2(d));
}

Density windowed_density(const Density& d, const CubeWindow& w) {
  Density out;
  out.n = d.n;
  out.slices = d.slices;
  out.dx = d.dx;
  out.tw = d.tw;
  out.rho.assign(d.n, 0.0);
  out.ssq.assign(d.slices, std::vector<double>(d.n, 0.0));
  for (std::size_t t = 0; t < w.chi.size(); ++t) {
    const int g = (w.start + static_cast<int>(t)) % d.n;
    const double c2 = w.chi[t] * w.chi[t];
    out.rho[g] = d.rho[g] * c2;
    for (int sl = 0; sl < d.slices; ++sl) out.ssq[sl][g] = d.ssq[sl][g] * c2;
  }
  return out;
}

}  // namespace

PartitionNormResult l2_partition_norm(const Context& ctx, const SpaceTimeField& u, int level,
                                      InnerNorm inner) {
  const Density d = make_density(u);
  const auto& lv = ctx.cubes->level(level);
  PartitionNormResult res;
  res.degenerate = std::ldexp(1.0, level) >= 2.0 * ctx.grid->length();
  double sum = 0.0;
  for (int q = 0; q < lv.cube_count; ++q) {
    double v = 0.0;
    switch (inner) {
      case InnerNorm::kL2tx: v = piece_l2_l2(d, lv.windows[q]); break;
      case InnerNorm::kLinfL2: v = piece_linf_l2(d, lv.windows[q]); break;
      case InnerNorm::kL2Cube:
        v = piece_l2_cube_sharp(d, lv.windows[q], lv.bounds[q], lv.bounds[q + 1]);
        break;
      case InnerNorm::kX: v = piece_x_norm(ctx, d, &lv.windows[q]); break;
    }
    sum += v * v;
  }
  res.value = std::sqrt(sum);
  return res;
}

PartitionNormResult l2_partition_norm(const Context& ctx, const SpectralField& u, int level) {
  const Density d = make_density(u);
  const auto& lv = ctx.cubes->level(level);
  PartitionNormResult res;
  res.degenerate = std::ldexp(1.0, level) >= 2.0 * ctx.grid->length();
  double sum = 0.0;
  for (int q = 0; q < lv.cube_count; ++q) {
    const double v = piece_l2_l2(d, lv.windows[q]);
    sum += v * v;
  }
  res.value = std::sqrt(sum);
  return res;
}

double x_norm(const Context& ctx, const SpaceTimeField& u) {
  const Density d = make_density(u);
  return piece_x_norm(ctx, d, nullptr);
}

double xj_norm(const Context& ctx, const SpaceTimeField& u, int j) {
  return std::ldexp(1.0, j) * x_norm(ctx, u) + u.linf_l2_norm();
}

double l2xs_norm(const Context& ctx, const SpaceTimeField& u, double s,
                 std::vector<double>* per_band) {
  const int jm = ctx.j_max();
  if (per_band) per_band->assign(jm + 1, 0.0);
  double total = 0.0;
  for (int j = 0; j <= jm; ++j) {
    const auto uj = ctx.lp->project_band(u, j);
    const Density d = make_density(uj);
    const auto& lv = ctx.cubes->level(2 * j);
    const double two_j = std::ldexp(1.0, j);
    double band_sq = 0.0;
    for (int q = 0; q < lv.cube_count; ++q) {
      const double xv = piece_x_norm(ctx, d, &lv.windows[q]);
      const double li = piece_linf_l2(d, lv.windows[q]);
      const double xj = two_j * xv + li;
      band_sq += xj * xj;
    }
    const double weighted = std::pow(2.0, s * j) * std::sqrt(band_sq);
    if (per_band) (*per_band)[j] = weighted;
    total += weighted * weighted;
  }
  return std::sqrt(total);
}

double l2hs_norm(const Context& ctx, const SpectralField& u, double s,
                 std::vector<double>* per_band) {
  const int jm = ctx.j_max();
  if (per_band) per_band->assign(jm + 1, 0.0);
  double total = 0.0;
  for (int j = 0; j <= jm; ++j) {
    const auto uj = ctx.lp->project_band(u, j);
    const Density d = make_density(uj);
    const auto& lv = ctx.cubes->level(2 * j);
    double band_sq = 0.0;
    for (int q = 0; q < lv.cube_count; ++q) {
      const double v = piece_l2_l2(d, lv.windows[q]);
      band_sq += v * v;
    }
    const double weighted = std::pow(2.0, s * j) * std::sqrt(band_sq);
    if (per_band) (*per_band)[j] = weighted;
    total += weighted * weighted;
  }
  return std::sqrt(total);
}

double l2_partition_xj_norm(const Context& ctx, const SpaceTimeField& u, int j) {
  const Density d = make_density(u);
  const auto& lv = ctx.cubes->level(2 * j);
  const double two_j = std::ldexp(1.0, j);
  double sum = 0.0;
  for (int q = 0; q < lv.cube_count; ++q) {
    const double xj = two_j * piece_x_norm(ctx, d, &lv.windows[q]) +
                      piece_linf_l2(d, lv.windows[q]);
    sum += xj * xj;
  }
  return std::sqrt(sum);
}

double linf_l2hs_norm(const Context& ctx, const SpaceTimeField& u, double s) {
  double best = 0.0;
  for (int i = 0; i < u.slice_count(); ++i) best = std::max(best, l2hs_norm(ctx, u.slice(i), s));
  return best;
}

double y_upper(const Context& ctx, const SpaceTimeField& f) {
  const Density d = make_density(f);
  return y_upper_of_density(ctx, d);
}

double yj_surrogate(const Context& ctx, const SpaceTimeField& f, int j) {
  const Density d = make_density(f);
  return yj_of_density(ctx, d, j);
}

double l2ys_surrogate(const Context& ctx, const SpaceTimeField& f, double s,
                      std::vector<double>* per_band) {
  const int jm = ctx.j_max();
  if (per_band) per_band->assign(jm + 1, 0.0);
  double total = 0.0;
  for (int j = 0; j <= jm; ++j) {
    const auto fj = ctx.lp->project_band(f, j);
    const Density d = make_density(fj);
    const auto& lv = ctx.cubes->level(2 * j);
    double band_sq = 0.0;
    for (int q = 0; q < lv.cube_count; ++q) {
      const Density piece = windowed_density(d, lv.windows[q]);
      const double v = yj_of_density(ctx, piece, j);
      band_sq += v * v;
    }
    const double weighted = std::pow(2.0, s * j) * std::sqrt(band_sq);
    if (per_band) (*per_band)[j] = weighted;
    total += weighted * weighted;
  }
  return std::sqrt(total);
}

NormReport make_norm_report(const Context& ctx, const SpaceTimeField& u,
                            const SpaceTimeField* forcing, double s) {
  NormReport r;
  r.s = s;
  r.l2hs = l2hs_norm(ctx, u.slice(0), s, &r.l2hs_band);
  r.l2xs = l2xs_norm(ctx, u, s, &r.l2xs_band);
  r.x = x_norm(ctx, u);
  r.linf_l2 = u.linf_l2_norm();
  const SpaceTimeField& ytarget = forcing ? *forcing : u;
  r.has_forcing = forcing != nullptr;
  r.y_surrogate = y_upper(ctx, ytarget);
  r.l2ys_surrogate = l2ys_surrogate(ctx, ytarget, s, &r.l2ys_band);
  return r;
}

}  // namespace paraairy
