#include "dcmd/adrc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dcmd/errors.hpp"

namespace dcmd {

void Scenario::validate() const {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  if (!(horizon >= dt) || !std::isfinite(horizon)) {
    throw ValidationError("horizon must be at least one time step");
  }
  if (disturbance.segment() != Segment::Gamma1) {
    throw ValidationError("disturbance must live on gamma1");
  }
  if (noise.segment() != Segment::Gamma1) throw ValidationError("noise must live on gamma1");
  if (reference.segment() != Segment::Gamma3) {
    throw ValidationError("reference must live on gamma3");
  }
  check_matches(grid, w0);
  check_matches(grid, w_hat0);
  check_matches(grid, v0);
}

std::size_t Scenario::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

BcSpec plant_bc() {
  BcSpec bc;
  bc.set(Segment::Gamma4, BoundaryCondition::robin_coupled());
  bc.set(Segment::Gamma3, BoundaryCondition::neumann());
  bc.set(Segment::Gamma2, BoundaryCondition::neumann());
  bc.set(Segment::Gamma1, BoundaryCondition::neumann());
  return bc;
}

BcSpec observer_bc() {
  BcSpec bc = plant_bc();
  bc.set(Segment::Gamma1, BoundaryCondition::dirichlet());
  return bc;
}

BcSpec servo_bc() {
  BcSpec bc = observer_bc();
  bc.set(Segment::Gamma3, BoundaryCondition::dirichlet());
  return bc;
}

std::vector<double> compute_control(const Grid& grid, const FieldPair& v) {
  check_matches(grid, v);
  return normal_derivative(grid, std::span<const double>(v.f), Segment::Gamma3);
}

TracePair estimate_disturbance(const Grid& grid, const FieldPair& w_hat) {
  return normal_derivative(grid, w_hat, Segment::Gamma1);
}

namespace {

void check_trace(const Grid& grid, Segment s, std::size_t size, const char* what) {
  if (size != grid.segment(s).nodes.size()) {
    throw ValidationError(std::string(what) + " must have one value per " + segment_name(s) +
                          " node");
  }
}

TracePair control_trace(const Grid& grid, std::span<const double> u1) {
  check_trace(grid, Segment::Gamma3, u1.size(), "control");
  auto out = TracePair::zeros(grid, Segment::Gamma3);
  out.f.assign(u1.begin(), u1.end());
  return out;
}

BoundaryData plant_data(const Grid& grid, std::span<const double> u1, const TracePair& d) {
  check_trace(grid, Segment::Gamma1, d.f.size(), "disturbance");
  check_trace(grid, Segment::Gamma1, d.p.size(), "disturbance");
  BoundaryData data;
  data[Segment::Gamma3] = control_trace(grid, u1);
  data[Segment::Gamma1] = d;
  return data;
}

BoundaryData observer_data(const Grid& grid, std::span<const double> u1, const TracePair& y_m) {
  check_trace(grid, Segment::Gamma1, y_m.f.size(), "measurement");
  check_trace(grid, Segment::Gamma1, y_m.p.size(), "measurement");
  BoundaryData data;
  data[Segment::Gamma3] = control_trace(grid, u1);
  data[Segment::Gamma1] = y_m;
  return data;
}

BoundaryData servo_data(const Grid& grid, const TracePair& r, const TracePair& w_hat_gamma1) {
  check_trace(grid, Segment::Gamma3, r.f.size(), "reference");
  check_trace(grid, Segment::Gamma3, r.p.size(), "reference");
  check_trace(grid, Segment::Gamma1, w_hat_gamma1.f.size(), "observer trace");
  check_trace(grid, Segment::Gamma1, w_hat_gamma1.p.size(), "observer trace");
  BoundaryData data;
  data[Segment::Gamma3] = r;
  data[Segment::Gamma1] = w_hat_gamma1;
  return data;
}

FieldPair step_once(const BcSpec& bc, const FieldPair& w, const BoundaryData& data,
                    const PhysicalParams& params, const Grid& grid, double dt,
                    AdvectionScheme scheme) {
  check_matches(grid, w);
  const BackwardEuler stepper(assemble(grid, params, bc, 1.0, scheme), dt);
  return stepper.step(w, data);
}

}  // namespace

FieldPair step_plant(const FieldPair& w, std::span<const double> u1, const TracePair& d,
                     const PhysicalParams& params, const Grid& grid, double dt,
                     AdvectionScheme scheme) {
  return step_once(plant_bc(), w, plant_data(grid, u1, d), params, grid, dt, scheme);
}

FieldPair step_observer(const FieldPair& w_hat, std::span<const double> u1, const TracePair& y_m,
                        const PhysicalParams& params, const Grid& grid, double dt,
                        AdvectionScheme scheme) {
  return step_once(observer_bc(), w_hat, observer_data(grid, u1, y_m), params, grid, dt, scheme);
}

FieldPair step_servo(const FieldPair& v, const TracePair& r, const TracePair& w_hat_gamma1,
                     const PhysicalParams& params, const Grid& grid, double dt,
                     AdvectionScheme scheme) {
  return step_once(servo_bc(), v, servo_data(grid, r, w_hat_gamma1), params, grid, dt, scheme);
}

namespace {

const Scenario& validated(const Scenario& s) {
  s.validate();
  return s;
}

}  // namespace

ClosedLoop::ClosedLoop(Scenario scenario)
    : scenario_(std::move(validated(scenario))),
      plant_(assemble(scenario_.grid, scenario_.params, plant_bc(), 1.0, scenario_.scheme),
             scenario_.dt),
      observer_(assemble(scenario_.grid, scenario_.params, observer_bc(), 1.0, scenario_.scheme),
                scenario_.dt),
      servo_(assemble(scenario_.grid, scenario_.params, servo_bc(), 1.0, scenario_.scheme),
             scenario_.dt) {
  state_.w = scenario_.w0;
  state_.w_hat = scenario_.w_hat0;
  state_.v = scenario_.v0;
  state_.u1 = compute_control(scenario_.grid, state_.v);
  state_.d_hat = estimate_disturbance(scenario_.grid, state_.w_hat);
}

MetricsRow ClosedLoop::metrics() const {
  const auto& g = scenario_.grid;
  const auto& s = state_;
  MetricsRow row;
  row.t = s.t;
  const auto r = scenario_.reference.sample(g, s.t);
  row.tracking_error = l2_norm_boundary(g, Segment::Gamma3, trace(g, s.w, Segment::Gamma3) - r);
  row.observer_error = weighted_norm(g, s.w - s.w_hat, scenario_.params);
  row.servo_gap = weighted_norm(g, s.w_hat - s.v, scenario_.params);
  const auto d = scenario_.disturbance.sample(g, s.t);
  row.disturbance_error = l2_norm_boundary(g, Segment::Gamma1, d - s.d_hat);
  row.control_norm = l2_norm_boundary(g, Segment::Gamma3, std::span<const double>(s.u1));
  return row;
}

void ClosedLoop::advance() {
  if (done()) throw ValidationError("closed loop already reached its horizon");
  const auto& g = scenario_.grid;
  const std::size_t next = state_.step + 1;
  const double t_next = static_cast<double>(next) * scenario_.dt;

  auto guarded = [&](const char* name, const BackwardEuler& stepper, const FieldPair& w,
                     const BoundaryData& data) {
    try {
      return stepper.step(w, data);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << name << " solve failed at step " << next << " (t = " << t_next << "): " << e.what();
      throw NumericalError(msg.str());
    }
  };

  const auto& u1 = state_.u1;
  const auto d = scenario_.disturbance.sample(g, t_next);
  FieldPair w = guarded("plant", plant_, state_.w, plant_data(g, u1, d));

  const auto y_m = trace(g, w, Segment::Gamma1) + scenario_.noise.sample(g, t_next);
  FieldPair w_hat = guarded("observer", observer_, state_.w_hat, observer_data(g, u1, y_m));

  const auto r = scenario_.reference.sample(g, t_next);
  FieldPair v =
      guarded("servo", servo_, state_.v, servo_data(g, r, trace(g, w_hat, Segment::Gamma1)));

  state_.w = std::move(w);
  state_.w_hat = std::move(w_hat);
  state_.v = std::move(v);
  state_.t = t_next;
  state_.step = next;
  state_.u1 = compute_control(g, state_.v);
  state_.d_hat = estimate_disturbance(g, state_.w_hat);
}

ClosedLoopResult run_closed_loop(const Scenario& scenario,
                                 const std::function<void(const ClosedLoopState&)>& observer) {
  ClosedLoop loop(scenario);
  ClosedLoopResult result;
  result.metrics.reserve(scenario.steps() + 1);
  result.metrics.push_back(loop.metrics());
  if (observer) observer(loop.state());
  while (!loop.done()) {
    loop.advance();
    result.metrics.push_back(loop.metrics());
    if (observer) observer(loop.state());
  }
  result.final_state = loop.state();
  return result;
}

Scenario nominal_scenario(std::size_t nx, std::size_t ny) {
  using std::numbers::pi;
  Scenario s;
  s.params = PhysicalParams::nominal();
  s.grid = make_grid(nx, ny, 2.0);
  s.disturbance = BoundarySignal(Segment::Gamma1, [](double t, double) {
    const double d = 0.1 * std::sin(pi / 2.0 * t);
    return std::array<double, 2>{d, d};
  });
  s.reference = BoundarySignal(Segment::Gamma3, [](double t, double x) {
    const double phase = std::sin(pi / 2.0 * x * t);
    return std::array<double, 2>{15.0 * phase, 10.0 * phase};
  });
  s.noise = BoundarySignal::zero(Segment::Gamma1);
  s.w0 = FieldPair::sample(
      s.grid, [](double x, double y) { return 6.0 * std::sin(pi * x) * std::cos(pi / 4.0 * y); },
      [](double x, double y) { return 3.0 * std::sin(pi / 2.0 * x) * std::cos(pi / 4.0 * y); });
  s.w_hat0 = FieldPair::sample(
      s.grid, [](double x, double y) { return 5.0 * std::sin(pi * x) * std::cos(pi / 8.0 * y); },
      [](double x, double y) { return 2.5 * std::sin(pi * x) * std::cos(pi / 4.0 * y); });
  s.v0 = FieldPair::sample(
      s.grid, [](double x, double y) { return 4.0 * std::sin(pi / 2.0 * x) * std::cos(pi / 4.0 * y); },
      [](double x, double y) { return 3.5 * std::sin(pi / 2.0 * x) * std::cos(pi / 8.0 * y); });
  s.horizon = 10.0;
  s.dt = 2e-3;
  return s;
}

}  // namespace dcmd
