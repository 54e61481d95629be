#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paraairy/iteration.hpp"
#include "paraairy/nonlinearity.hpp"

namespace paraairy {

/// A solver run description: nonlinearity, initial data profile, grid and
/// solver parameters. Parsed from a flat key = value text file; monomials
/// are the one repeated entry (`monomial = re im a0 a1 a2`).
struct Scenario {
  std::string name = "scenario";
  std::vector<Monomial> monomials;
  std::string profile = "sech";  // sech | sech2 | gaussian | random
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  std::uint64_t profile_seed = 1;
  int n_points = 1024;
  double length = 64.0;
  int snapshot_stride = 1;
  SolverConfig config;
};

Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario parse_scenario_file(const std::string& path);

/// Validates the scenario against the nonlinearity thresholds (s > s0,
/// sigma > 7/2) and the grid's product-aliasing margin; returns the
/// validated nonlinearity.
PolynomialNonlinearity validate_scenario(const Scenario& sc);

SpectralField build_initial_data(const Context& ctx, const Scenario& sc);

}  // namespace paraairy
