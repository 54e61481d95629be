#include "paraairy/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "paraairy/errors.hpp"
#include "paraairy/parallel.hpp"
#include "paraairy/rng.hpp"

namespace paraairy {

double mizohata_integral(const SpectralField& a) {
  const auto s = a.samples();
  const int n = a.grid()->n();
  const double dx = a.grid()->dx();
  double best = 0.0;
  double prefix = 0.0;
  double running_min = 0.0;  // prefix integral starts at 0
  for (int i = 0; i + 1 < n; ++i) {
    prefix += 0.5 * dx * (s[i].real() + s[i + 1].real());
    running_min = std::min(running_min, prefix);
    best = std::max(best, prefix - running_min);
  }
  return best;
}

namespace {

constexpr int kProbeN = 2048;
constexpr double kProbeL = 32.0;
constexpr int kProbeSteps = 12;

const Context& probe_context() {
  static const Context ctx = make_context(kProbeN, kProbeL);
  return ctx;
}

SpectralField random_slice(const Context& ctx, Rng& rng, double decay = 0.02) {
  SpectralField u(ctx.grid);
  for (int m = 0; m < ctx.grid->n(); ++m) {
    const double xi = ctx.grid->xi(m);
    u.coef()[m] = Complex(rng.normal(), rng.normal()) * std::exp(-decay * xi * xi);
  }
  return u;
}

/// Band-limited space-time field with smooth random time rotation per mode.
SpaceTimeField random_st(const Context& ctx, Rng& rng, int band /* -1 = resolved */) {
  auto base = random_slice(ctx, rng, band < 0 ? 0.02 : 0.0);
  base = band < 0 ? ctx.lp->project_resolved(base) : ctx.lp->project_band(base, band);
  std::vector<double> omega(ctx.grid->n());
  for (auto& w : omega) w = 10.0 * (rng.uniform() - 0.5);
  SpaceTimeField out(ctx.grid, kProbeSteps);
  for (int i = 0; i <= kProbeSteps; ++i) {
    auto s = base;
    const double t = static_cast<double>(i) / kProbeSteps;
    for (int m = 0; m < ctx.grid->n(); ++m)
      s.coef()[m] *= Complex(std::cos(omega[m] * t), std::sin(omega[m] * t));
    out.slice(i) = std::move(s);
  }
  return out;
}

SpaceTimeField normalized_xs(const Context& ctx, SpaceTimeField u, double s) {
  const double n = l2xs_norm(ctx, u, s);
  if (n > 0.0) u *= 1.0 / n;
  return u;
}

int random_high_band(const Context& ctx, Rng& rng) {
  return 5 + static_cast<int>(rng.uniform() * (ctx.j_max() - 4));
}

double safe_ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

using ProbeFn = std::function<double(const Context&, Rng&)>;

const std::map<std::string, ProbeFn>& probe_registry() {
  static const std::map<std::string, ProbeFn> reg = [] {
    std::map<std::string, ProbeFn> r;
    const double s = 1.0;

    r["Halg"] = [s](const Context& ctx, Rng& rng) {
      const auto u = ctx.lp->project_resolved(random_slice(ctx, rng));
      const auto v = ctx.lp->project_resolved(random_slice(ctx, rng));
      return safe_ratio(l2hs_norm(ctx, multiply(u, v), s),
                        l2hs_norm(ctx, u, s) * l2hs_norm(ctx, v, s));
    };
    r["alg"] = [s](const Context& ctx, Rng& rng) {
      const auto u = random_st(ctx, rng, -1);
      const auto v = random_st(ctx, rng, -1);
      return safe_ratio(l2xs_norm(ctx, multiply(u, v), s),
                        l2xs_norm(ctx, u, s) * l2xs_norm(ctx, v, s));
    };
    r["bil"] = [s](const Context& ctx, Rng& rng) {
      const auto u = random_st(ctx, rng, -1);
      const auto v = random_st(ctx, rng, -1);
      return safe_ratio(l2ys_surrogate(ctx, multiply(u, v), s),
                        l2xs_norm(ctx, u, 1.25) * l2xs_norm(ctx, v, 1.25));
    };
    r["bilLH"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const auto u = random_st(ctx, rng, -1);
      const auto vj = random_st(ctx, rng, j);
      const auto prod = multiply(ctx.lp->project_below(u, j - 4), vj);
      return safe_ratio(l2ys_surrogate(ctx, prod, s),
                        l2xs_norm(ctx, u, 1.25) * l2xs_norm(ctx, vj, s));
    };
    r["bilHH"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const auto u = random_st(ctx, rng, -1);
      const auto v = random_st(ctx, rng, -1);
      const auto hu = u - ctx.lp->project_below(u, j - 4);
      const auto hv = v - ctx.lp->project_below(v, j - 4);
      const auto lhs = ctx.lp->project_band(multiply(hu, hv), j);
      const double bound = std::exp2((s + 0.5 - 2.0) * j) * l2xs_norm(ctx, u, 1.0) *
                           l2xs_norm(ctx, v, 1.0);
      return safe_ratio(l2ys_surrogate(ctx, lhs, s), bound);
    };
    r["LHbilH"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const auto u = ctx.lp->project_resolved(random_slice(ctx, rng));
      const auto v = ctx.lp->project_band(random_slice(ctx, rng, 0.0), j);
      const auto prod = multiply(ctx.lp->project_below(u, j - 4), v);
      return safe_ratio(l2hs_norm(ctx, prod, s), l2hs_norm(ctx, u, 1.0) * l2hs_norm(ctx, v, s));
    };
    r["LHbilX"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const auto u = random_st(ctx, rng, -1);
      const auto vj = random_st(ctx, rng, j);
      const auto prod = multiply(ctx.lp->project_below(u, j - 4), vj);
      return safe_ratio(l2xs_norm(ctx, prod, s), l2xs_norm(ctx, u, 1.0) * l2xs_norm(ctx, vj, s));
    };
    r["HHbilX"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const auto u = random_st(ctx, rng, -1);
      const auto v = random_st(ctx, rng, -1);
      const auto hu = u - ctx.lp->project_below(u, j - 4);
      const auto hv = v - ctx.lp->project_below(v, j - 4);
      const auto lhs = ctx.lp->project_band(multiply(hu, hv), j);
      const double bound = std::exp2(-0.5 * j) * l2xs_norm(ctx, u, 1.0) * l2xs_norm(ctx, v, 1.0);
      return safe_ratio(l2xs_norm(ctx, lhs, s), bound);
    };
    r["LHbilY"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const auto u = random_st(ctx, rng, -1);
      const auto fj = random_st(ctx, rng, j);
      const auto prod = multiply(ctx.lp->project_below(u, j - 4), fj);
      return safe_ratio(l2ys_surrogate(ctx, prod, s),
                        l2xs_norm(ctx, u, 1.0) * l2ys_surrogate(ctx, fj, s));
    };
    r["expH"] = [s](const Context& ctx, Rng& rng) {
      auto a = ctx.lp->project_resolved(random_slice(ctx, rng));
      a *= 0.5 / std::max(l2hs_norm(ctx, a, s), 1e-30);
      const auto u = ctx.lp->project_resolved(random_slice(ctx, rng));
      const auto lhs = l2hs_norm(ctx, multiply(exp_field(a, 1.0), u), s);
      return safe_ratio(lhs, std::exp(l2hs_norm(ctx, a, s)) * l2hs_norm(ctx, u, s));
    };
    r["expX"] = [s](const Context& ctx, Rng& rng) {
      auto a = random_st(ctx, rng, -1);
      a *= 0.5 / std::max(l2xs_norm(ctx, a, s), 1e-30);
      const auto u = random_st(ctx, rng, -1);
      const auto lhs = l2xs_norm(ctx, multiply(exp_field(a, 1.0), u), s);
      return safe_ratio(lhs, std::exp(l2xs_norm(ctx, a, s)) * l2xs_norm(ctx, u, s));
    };
    r["FLexpH"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      auto a = ctx.lp->project_resolved(random_slice(ctx, rng));
      a *= 0.5 / std::max(l2hs_norm(ctx, a, 1.0), 1e-30);
      const auto uj = ctx.lp->project_band(random_slice(ctx, rng, 0.0), j);
      const auto lhs = multiply(ctx.lp->project_below(exp_field(a, 1.0), j - 4), uj);
      return safe_ratio(l2hs_norm(ctx, lhs, s),
                        std::exp(l2hs_norm(ctx, a, 1.0)) * l2hs_norm(ctx, uj, s));
    };
    r["FLexpX"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      auto a = random_st(ctx, rng, -1);
      a *= 0.5 / std::max(l2xs_norm(ctx, a, 1.0), 1e-30);
      const auto uj = random_st(ctx, rng, j);
      const auto lhs = multiply(ctx.lp->project_below(exp_field(a, 1.0), j - 4), uj);
      return safe_ratio(l2xs_norm(ctx, lhs, s),
                        std::exp(l2xs_norm(ctx, a, 1.0)) * l2xs_norm(ctx, uj, s));
    };
    r["FLexpY"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      auto a = random_st(ctx, rng, -1);
      a *= 0.5 / std::max(l2xs_norm(ctx, a, 1.0), 1e-30);
      const auto fj = random_st(ctx, rng, j);
      const auto lhs = multiply(ctx.lp->project_below(exp_field(a, 1.0), j - 4), fj);
      return safe_ratio(l2ys_surrogate(ctx, lhs, s),
                        std::exp(l2xs_norm(ctx, a, 1.0)) * l2ys_surrogate(ctx, fj, s));
    };
    r["tri"] = [s](const Context& ctx, Rng& rng) {
      const auto u = random_st(ctx, rng, -1);
      const auto v = random_st(ctx, rng, -1);
      const auto w = random_st(ctx, rng, -1);
      return safe_ratio(l2ys_surrogate(ctx, multiply(multiply(u, v), w), s),
                        l2xs_norm(ctx, u, 1.0) * l2xs_norm(ctx, v, 1.0) * l2xs_norm(ctx, w, 1.0));
    };
    r["triLHH"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const int k = j + static_cast<int>(rng.uniform() * (ctx.j_max() - j + 1));
      const auto u = random_st(ctx, rng, -1);
      const auto vj = random_st(ctx, rng, j);
      const auto wk = random_st(ctx, rng, k);
      const auto lhs = multiply(multiply(ctx.lp->project_below(u, j - 4), vj), wk);
      return safe_ratio(l2ys_surrogate(ctx, lhs, s),
                        l2xs_norm(ctx, u, 1.0) * l2xs_norm(ctx, vj, 1.0) *
                            l2xs_norm(ctx, wk, 1.0));
    };
    r["tri-lemma"] = [](const Context& ctx, Rng& rng) {
      int b[4];
      for (auto& x : b) x = 2 + static_cast<int>(rng.uniform() * (ctx.j_max() - 1));
      std::sort(b, b + 4);
      const auto ui = random_st(ctx, rng, b[0]);
      const auto vj = random_st(ctx, rng, b[1]);
      const auto wk = random_st(ctx, rng, b[2]);
      const auto zl = random_st(ctx, rng, b[3]);
      const auto tw = trapezoid_weights(ui.slice_count());
      Complex pair(0.0, 0.0);
      for (int i = 0; i < ui.slice_count(); ++i) {
        const auto a = ui.slice(i).samples();
        const auto bb = vj.slice(i).samples();
        const auto c = wk.slice(i).samples();
        const auto d = zl.slice(i).samples();
        Complex acc(0.0, 0.0);
        for (int p = 0; p < ctx.grid->n(); ++p) acc += a[p] * bb[p] * c[p] * d[p];
        pair += tw[i] * acc * ctx.grid->dx();
      }
      const double bound = std::exp2(1.5 * b[0] + 1.5 * b[1] - b[2] - b[3]) *
                           l2_partition_xj_norm(ctx, ui, b[0]) *
                           l2_partition_xj_norm(ctx, vj, b[1]) *
                           l2_partition_xj_norm(ctx, wk, b[2]) *
                           l2_partition_xj_norm(ctx, zl, b[3]);
      return safe_ratio(std::abs(pair), bound);
    };
    r["com"] = [s](const Context& ctx, Rng& rng) {
      const int j = random_high_band(ctx, rng);
      const double sigma = 4.0;
      auto a = random_st(ctx, rng, -1);
      a *= 1.0 / std::max(l2xs_norm(ctx, a, sigma), 1e-30);
      const auto a_low = ctx.lp->project_below(a, j - 4);
      const auto uj = random_st(ctx, rng, j);
      SpaceTimeField comm(ctx.grid, uj.steps());
      for (int i = 0; i < uj.slice_count(); ++i) {
        const auto dxa = derivative(a_low.slice(i), 1);
        const auto uxx = derivative(uj.slice(i), 2);
        comm.slice(i) = ctx.lp->project_band(multiply(dxa, uxx), j) -
                        multiply(dxa, ctx.lp->project_band(uxx, j));
      }
      const double rhs = l2xs_norm(ctx, derivative(a, 1), sigma - 1.0) *
                         l2xs_norm(ctx, ctx.lp->project_wide(uj, j), s);
      return safe_ratio(l2ys_surrogate(ctx, comm, s), rhs);
    };
    r["bernstein"] = [](const Context& ctx, Rng& rng) {
      const int j = 2 + static_cast<int>(rng.uniform() * (ctx.j_max() - 2));
      const auto uj = random_st(ctx, rng, j);
      double linf = 0.0;
      for (int i = 0; i < uj.slice_count(); ++i)
        for (const auto& v : uj.slice(i).samples()) linf = std::max(linf, std::abs(v));
      return safe_ratio(linf, std::exp2(0.5 * j) * uj.linf_l2_norm());
    };
    r["LFXH"] = [](const Context& ctx, Rng& rng) {
      const double s2 = 2.0;
      const auto low = ctx.lp->project_band(random_slice(ctx, rng), 0);
      const auto st = constant_in_time(low, kProbeSteps);
      return safe_ratio(l2xs_norm(ctx, st, s2), linf_l2hs_norm(ctx, st, s2));
    };
    return r;
  }();
  return reg;
}

}  // namespace

const std::vector<std::string>& probe_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const auto& [k, v] : probe_registry()) t.push_back(k);
    return t;
  }();
  return tags;
}

ProbeResult probe_estimate(const std::string& tag, int trials, std::uint64_t seed) {
  const auto& reg = probe_registry();
  const auto it = reg.find(tag);
  if (it == reg.end())
    throw SolverError(ErrorCode::kUnknownTag, "no probe named '" + tag + "'");
  if (trials < 1) throw SolverError(ErrorCode::kInvalidArgument, "trials must be positive");
  const Context& ctx = probe_context();
  ProbeResult out;
  out.id = tag;
  out.trials = trials;
  out.seed = seed;
  out.ratios.assign(trials, 0.0);
  parallel_for(trials, [&](std::size_t trial) {
    Rng rng(seed, trial);
    out.ratios[trial] = it->second(ctx, rng);
  });
  for (double v : out.ratios) {
    if (!std::isfinite(v))
      throw SolverError(ErrorCode::kInvalidArgument, "non-finite probe ratio in " + tag);
  }
  auto sorted = out.ratios;
  std::sort(sorted.begin(), sorted.end());
  out.median = sorted[sorted.size() / 2];
  out.max = sorted.back();
  out.max_over_median = out.median > 0.0 ? out.max / out.median : 0.0;
  return out;
}

}  // namespace paraairy
