#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paraairy/field.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// sup_{x1 <= x2} Re int_{x1}^{x2} a dx over one period, from the running
/// minimum of the trapezoid prefix integral.
double mizohata_integral(const SpectralField& a);

struct ProbeResult {
  std::string id;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;  // per-trial LHS / RHS-bound, constant set to 1
  double median = 0.0;
  double max = 0.0;
  double max_over_median = 0.0;
};

/// Randomized probe of one of the function-space estimates; the tag names
/// the inequality family (see probe_tags). Ratios are LHS over the bound's
/// right-hand side with unit constant; runs are reproducible from the seed,
/// with one derived stream per trial.
ProbeResult probe_estimate(const std::string& tag, int trials, std::uint64_t seed);

const std::vector<std::string>& probe_tags();

}  // namespace paraairy
