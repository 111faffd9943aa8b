#pragma once

#include <span>
#include <vector>

#include "dcmd/fields.hpp"

namespace dcmd {

struct ConvergenceLevel {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dt = 0.0;
  double error = 0.0;
  /// Observed order against the previous level; NaN on the first level.
  double order = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  double min_order() const;
};

/// Steady manufactured solution on nx x (L (nx - 1) + 1) grids with the inlet boundary
/// conditions of params.orientation. Error is the weighted norm of w_h - w*.
ConvergenceStudy spatial_convergence(const PhysicalParams& params,
                                     std::span<const std::size_t> nx_levels, double length = 2.0);

/// Backward Euler on a manufactured solution that is quadratic in space, so the spatial
/// stencils are exact and the error at the horizon is pure time discretization error.
ConvergenceStudy temporal_convergence(const PhysicalParams& params, std::span<const double> dts,
                                      std::size_t nx = 11, double horizon = 1.0,
                                      double length = 2.0);

}  // namespace dcmd
