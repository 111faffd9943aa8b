#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dcmd/boundary.hpp"
#include "dcmd/discrete_operator.hpp"
#include "dcmd/fields.hpp"
#include "dcmd/grid.hpp"

namespace dcmd {

/// Everything needed to run the output-tracking loop.
///
/// The plant sees the unknown flux disturbance on Gamma1 and the control flux on Gamma3; the
/// measurement is the plant's Gamma1 trace plus noise; the regulated output is the plant's
/// Gamma3 trace, which should follow the reference.
struct Scenario {
  PhysicalParams params = PhysicalParams::nominal();
  Grid grid = make_grid(26, 51, 2.0);
  AdvectionScheme scheme = AdvectionScheme::Centered;
  BoundarySignal disturbance = BoundarySignal::zero(Segment::Gamma1);
  BoundarySignal reference = BoundarySignal::zero(Segment::Gamma3);
  BoundarySignal noise = BoundarySignal::zero(Segment::Gamma1);
  FieldPair w0;
  FieldPair w_hat0;
  FieldPair v0;
  double horizon = 10.0;
  double dt = 2e-3;

  /// Throws ValidationError on inconsistent sizes, bad dt/horizon or signal segments.
  void validate() const;
  std::size_t steps() const;
};

struct ClosedLoopState {
  double t = 0.0;
  std::size_t step = 0;
  FieldPair w;      ///< plant
  FieldPair w_hat;  ///< extended state observer
  FieldPair v;      ///< servomechanism
  std::vector<double> u1;  ///< control flux on Gamma3, feed component
  TracePair d_hat;         ///< disturbance estimate on Gamma1
};

struct MetricsRow {
  double t = 0.0;
  double tracking_error = 0.0;     ///< |w|Gamma3 - r|, boundary L2 of both components
  double observer_error = 0.0;     ///< |w - w_hat|, weighted domain norm
  double servo_gap = 0.0;          ///< |w_hat - v|, weighted domain norm
  double disturbance_error = 0.0;  ///< |d - d_hat|, boundary L2 on Gamma1
  double control_norm = 0.0;       ///< |u1|, boundary L2 on Gamma3
};

/// Boundary conditions of the three subsystems.
BcSpec plant_bc();
BcSpec observer_bc();
BcSpec servo_bc();

/// u1 = dv_f/dnu on Gamma3. The permeate control component is identically zero.
std::vector<double> compute_control(const Grid& grid, const FieldPair& v);

/// d_hat = dw_hat/dnu on Gamma1.
TracePair estimate_disturbance(const Grid& grid, const FieldPair& w_hat);

/// Single subsystem steps that assemble and factorize on every call.
FieldPair step_plant(const FieldPair& w, std::span<const double> u1, const TracePair& d,
                     const PhysicalParams& params, const Grid& grid, double dt,
                     AdvectionScheme scheme = AdvectionScheme::Centered);
FieldPair step_observer(const FieldPair& w_hat, std::span<const double> u1, const TracePair& y_m,
                        const PhysicalParams& params, const Grid& grid, double dt,
                        AdvectionScheme scheme = AdvectionScheme::Centered);
FieldPair step_servo(const FieldPair& v, const TracePair& r, const TracePair& w_hat_gamma1,
                     const PhysicalParams& params, const Grid& grid, double dt,
                     AdvectionScheme scheme = AdvectionScheme::Centered);

/// Closed loop with the three subsystem operators factorized once.
///
/// One step from t to t+dt:
///   1. u1 from the servo state at t;
///   2. plant step with (u1, d(t+dt));
///   3. observer step with (u1, y_m), y_m = plant Gamma1 trace at t+dt + noise(t+dt);
///   4. servo step with (r(t+dt), observer Gamma1 trace at t+dt).
class ClosedLoop {
 public:
  explicit ClosedLoop(Scenario scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  const ClosedLoopState& state() const noexcept { return state_; }
  MetricsRow metrics() const;
  bool done() const noexcept { return state_.step >= scenario_.steps(); }

  void advance();

 private:
  Scenario scenario_;
  BackwardEuler plant_;
  BackwardEuler observer_;
  BackwardEuler servo_;
  ClosedLoopState state_;
};

struct ClosedLoopResult {
  std::vector<MetricsRow> metrics;
  ClosedLoopState final_state;
};

/// Runs to the horizon, one MetricsRow per time level including t = 0. The optional
/// observer is called with every state (including the initial one).
ClosedLoopResult run_closed_loop(const Scenario& scenario,
                                 const std::function<void(const ClosedLoopState&)>& observer = {});

/// Nominal example: the default plant with sinusoidal disturbance and reference
/// on an nx x ny grid (101 x 201 matches h = 1/100).
Scenario nominal_scenario(std::size_t nx = 101, std::size_t ny = 201);

}  // namespace dcmd
