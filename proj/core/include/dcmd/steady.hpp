#pragma once

#include <span>
#include <vector>

#include "dcmd/boundary.hpp"
#include "dcmd/discrete_operator.hpp"
#include "dcmd/fields.hpp"
#include "dcmd/grid.hpp"

namespace dcmd {

/// Inlet configuration of the membrane module: the feed enters through Gamma1; the permeate
/// enters through Gamma3 (counter-current) or Gamma1 (co-current). Outlets and the outer
/// walls are insulated, Gamma4 carries the membrane coupling.
BcSpec inlet_bc(Orientation orientation);

/// Segment where the permeate inlet temperature is imposed.
Segment permeate_inlet(Orientation orientation);

/// Boundary data for inlet temperatures T_f (on Gamma1) and T_p (on the permeate inlet).
BoundaryData inlet_data(const Grid& grid, Orientation orientation, std::span<const double> t_f,
                        std::span<const double> t_p);

/// Solves A w + b(data) + source = 0 on free rows and w = data on Dirichlet rows.
FieldPair solve_stationary(const DiscreteOperator& op, const BoundaryData& data,
                           const FieldPair* source = nullptr);

/// Stationary solution (f_inf, p_inf) for the given inlet temperature traces.
FieldPair solve_steady(const Grid& grid, const PhysicalParams& params, std::span<const double> t_f,
                       std::span<const double> t_p);

/// Weighted norm of the discrete steady residual (free rows: A w + b, Dirichlet rows: w - g).
double steady_residual(const Grid& grid, const PhysicalParams& params, const FieldPair& w,
                       std::span<const double> t_f, std::span<const double> t_p);

struct TimedState {
  double t = 0.0;
  FieldPair w;
};

/// Backward-Euler transient with constant inlet temperatures, sampled every sample_every steps
/// (the initial state is always the first sample).
std::vector<TimedState> run_inlet_transient(const Grid& grid, const PhysicalParams& params,
                                            std::span<const double> t_f,
                                            std::span<const double> t_p, const FieldPair& w0,
                                            double dt, double horizon, std::size_t sample_every);

struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (t, log v). All values must be positive.
LogLinearFit fit_exponential(std::span<const double> t, std::span<const double> values);

struct SettlingResult {
  bool saturated = false;
  /// Decay rate (1/time); positive means exponential settling.
  double rate = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

inline constexpr double kSettlingFloor = 1e-13;

/// Fits log |w(t) - reference|_weighted over samples with t >= window_start. Needs at least
/// 10 samples in the window; reports saturation when a distance is already below 1e-13.
SettlingResult settling_rate(const Grid& grid, const PhysicalParams& params,
                             std::span<const TimedState> history, const FieldPair& reference,
                             double window_start = 0.0);

}  // namespace dcmd
