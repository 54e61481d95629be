#pragma once

#include <vector>

#include "paraairy/field.hpp"
#include "paraairy/nonlinearity.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// Parameters tying the original problem to the rescaled unit-interval solve:
/// data map u0 -> 2^(lambda k) u0(2^-k x), box length 2^k L, and the time map
/// [0,1] -> [0, 2^-3k].
struct RescaleContext {
  int k = 0;
  double lambda = 0.0;
  GridPtr original_grid;
  GridPtr rescaled_grid;
  double theta = 0.0;  // smallness target for the rescaled high part
};

/// Builds the dilated grid: box length grows by 2^k; the point count grows
/// with it up to n_cap, beyond which dx coarsens (reported by the caller).
GridPtr make_rescaled_grid(const Grid& original, int k, int n_cap);

/// u0 -> 2^(lambda k) u0(2^-k x), exact in frequency space: mode m keeps its
/// index on the dilated grid and is scaled by 2^(lambda k).
SpectralField rescale_data(const SpectralField& u0, const GridPtr& rescaled, int k,
                           double lambda);

/// low = S_0 of the input, high = remainder; low + high reproduces the input.
std::pair<SpectralField, SpectralField> split_low_high(const Context& ctx,
                                                       const SpectralField& u0k);

/// Inverse of rescale_data composed with the time map: reads the unit-interval
/// field at (2^3k t, 2^k x) back onto the original grid, scaled by 2^(-lambda k).
/// Modes beyond the original grid's range are dropped; *leakage reports their
/// l2 mass. Output times are t_i * 2^(-3k) with t_i the rescaled samples.
SpaceTimeField unrescale_solution(const SpaceTimeField& v_plus_low, const GridPtr& original,
                                  int k, double lambda, double* leakage = nullptr);

struct KSearchResult {
  int k = 0;
  double high_norm = 0.0;      // achieved ||u0^(k)h||_{l2Hs}
  double dxa_norm = 0.0;       // admission quantity at v = 0
  double para_surrogate = 0.0; // cond:para2 battery value at v = 0
  bool capped = false;         // rescaled grid hit the point cap
};

/// Smallest k with the rescaled high part below theta and the v = 0 admission
/// quantities below delta. Throws K_SEARCH_EXHAUSTED past k_max.
KSearchResult choose_k(const Context& ctx, const SpectralField& u0,
                       const PolynomialNonlinearity& f, double s, double theta,
                       double delta_threshold, int k_max, int n_cap, int m_steps,
                       std::uint64_t battery_seed);

}  // namespace paraairy
