#pragma once

#include <vector>

#include "paraairy/grid.hpp"

namespace paraairy {

/// One smooth window, sampled over its support. Samples wrap periodically:
/// sample t lives at grid index (start + t) mod n.
struct CubeWindow {
  int start = 0;
  std::vector<double> chi;
};

/// A partition of the periodic box into near-dyadic cubes at one level l:
/// nominally 2^l long, stretched evenly when 2^l does not divide the box.
/// bounds give the sharp index partition; windows give the smooth square
/// partition with sum_Q chi_Q^2 = 1 at every grid point.
struct CubeLevel {
  int level = 0;
  int cube_count = 0;
  bool degenerate = false;  // single cube covering the whole domain
  std::vector<int> bounds;  // size cube_count + 1, bounds[0] = 0, back() = n
  std::vector<CubeWindow> windows;
};

class CubeSet {
 public:
  explicit CubeSet(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  /// Smallest level whose single cube covers the domain.
  int level_max() const { return level_max_; }
  /// Clamps to level_max; every level >= level_max tiles with one cube.
  const CubeLevel& level(int l) const;

 private:
  GridPtr grid_;
  int level_max_;
  std::vector<CubeLevel> levels_;
};

}  // namespace paraairy
