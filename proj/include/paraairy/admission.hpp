#pragma once

#include <cstdint>

#include "paraairy/nonlinearity.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// ||dx a(v)||_{l2 X^(sigma-1)} for the unfrozen coefficient a(v).
double dxa_admission_norm(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low, double sigma);

/// Operator surrogate for the paraproduct hypothesis: the max over a fixed
/// battery of unit-l2Xs test fields z (one per band plus eight seeded random
/// fields) of the l2Ys surrogate of T_{(dt+dx^3) a(v)} z. rhs_v must be the
/// evolution image (dt+dx^3) v of the state defining a.
double para2_surrogate(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& rhs_v,
                       const SpectralField& u0_low, double s, int m_steps,
                       std::uint64_t battery_seed);

struct AdmissionReport {
  double dxa_norm = 0.0;
  double para_surrogate = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

AdmissionReport admission_check(const Context& ctx, const BadGoodSplit& split,
                                const SpaceTimeField& v, const SpaceTimeField& rhs_v,
                                const SpectralField& u0_low, double s, double sigma,
                                double delta_threshold, std::uint64_t battery_seed);

}  // namespace paraairy
