#include "paraairy/rescale.hpp"

#include <algorithm>
#include <cmath>

#include "paraairy/admission.hpp"
#include "paraairy/errors.hpp"

namespace paraairy {

GridPtr make_rescaled_grid(const Grid& original, int k, int n_cap) {
  const double length = std::ldexp(original.length(), k);
  long long n = static_cast<long long>(original.n()) << k;
  if (n > n_cap) n = n_cap;
  if (n < original.n()) n = original.n();
  return make_grid(static_cast<int>(n), length);
}

SpectralField rescale_data(const SpectralField& u0, const GridPtr& rescaled, int k,
                           double lambda) {
  if (k < 0) throw SolverError(ErrorCode::kInvalidArgument, "rescaling level must be >= 0");
  const int n_in = u0.grid()->n();
  const int n_out = rescaled->n();
  const double amp = std::exp2(lambda * k);
  SpectralField out(rescaled);
  // Mode m of the input becomes mode m of the dilated box: its frequency
  // 2 pi m / L drops to 2 pi m / (2^k L) while the index is unchanged.
  const int half = std::min(n_in, n_out) / 2;
  for (int m = -half; m < half; ++m) {
    const int src = m >= 0 ? m : m + n_in;
    const int dst = m >= 0 ? m : m + n_out;
    out.coef()[dst] = amp * u0.coef()[src];
  }
  return out;
}

std::pair<SpectralField, SpectralField> split_low_high(const Context& ctx,
                                                       const SpectralField& u0k) {
  auto low = ctx.lp->project_band(u0k, 0);
  auto high = u0k - low;
  return {std::move(low), std::move(high)};
}

SpaceTimeField unrescale_solution(const SpaceTimeField& v_plus_low, const GridPtr& original,
                                  int k, double lambda, double* leakage) {
  const int n_in = v_plus_low.grid()->n();
  const int n_out = original->n();
  const double amp = std::exp2(-lambda * k);
  double leaked = 0.0;
  std::vector<SpectralField> slices;
  slices.reserve(v_plus_low.slice_count());
  for (int i = 0; i < v_plus_low.slice_count(); ++i) {
    const auto& in = v_plus_low.slice(i);
    SpectralField out(original);
    const int half = std::min(n_in, n_out) / 2;
    for (int m = -half; m < half; ++m) {
      const int src = m >= 0 ? m : m + n_in;
      const int dst = m >= 0 ? m : m + n_out;
      out.coef()[dst] = amp * in.coef()[src];
    }
    if (n_in > n_out) {
      for (int idx = 0; idx < n_in; ++idx) {
        const int m = idx < n_in / 2 ? idx : idx - n_in;
        if (m >= -n_out / 2 && m < n_out / 2) continue;
        leaked += std::norm(amp * in.coef()[idx]);
      }
    }
    slices.push_back(std::move(out));
  }
  if (leakage) *leakage = std::sqrt(v_plus_low.grid()->length() * leaked);
  return SpaceTimeField(std::move(slices));
}

KSearchResult choose_k(const Context& ctx, const SpectralField& u0,
                       const PolynomialNonlinearity& f, double s, double theta,
                       double delta_threshold, int k_max, int n_cap, int m_steps,
                       std::uint64_t battery_seed) {
  const double sigma = sigma_exponent(s, f);
  KSearchResult last;
  for (int k = 0; k <= k_max; ++k) {
    const auto rg = make_rescaled_grid(*ctx.grid, k, n_cap);
    const auto rctx = make_context(rg);
    const auto u0k = rescale_data(u0, rg, k, f.lambda);
    const auto [low, high] = split_low_high(rctx, u0k);
    KSearchResult res;
    res.k = k;
    res.capped = rg->n() < (static_cast<long long>(ctx.grid->n()) << k);
    res.high_norm = l2hs_norm(rctx, high, s);
    const auto split = split_bad_good(f, k);
    const SpaceTimeField zero(rg, m_steps);
    res.dxa_norm = dxa_admission_norm(rctx, split, zero, low, sigma);
    res.para_surrogate = para2_surrogate(rctx, split, zero, low, s, m_steps, battery_seed);
    last = res;
    if (res.high_norm <= theta && res.dxa_norm <= delta_threshold &&
        res.para_surrogate <= delta_threshold)
      return res;
  }
  throw SolverError(ErrorCode::kKSearchExhausted,
                    "no admissible k <= " + std::to_string(k_max) +
                        "; at k_max: high = " + std::to_string(last.high_norm) +
                        ", dxa = " + std::to_string(last.dxa_norm) +
                        ", para2 = " + std::to_string(last.para_surrogate));
}

}  // namespace paraairy
