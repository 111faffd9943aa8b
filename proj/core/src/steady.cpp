#include "dcmd/steady.hpp"

#include <cmath>
#include <string>

#include "dcmd/errors.hpp"

namespace dcmd {

Segment permeate_inlet(Orientation orientation) {
  return orientation == Orientation::CounterCurrent ? Segment::Gamma3 : Segment::Gamma1;
}

BcSpec inlet_bc(Orientation orientation) {
  BcSpec bc;
  bc.set(Segment::Gamma4, BoundaryCondition::robin_coupled());
  bc.set(Segment::Gamma1, Component::Feed, BoundaryCondition::dirichlet());
  bc.set(permeate_inlet(orientation), Component::Permeate, BoundaryCondition::dirichlet());
  return bc;
}

BoundaryData inlet_data(const Grid& grid, Orientation orientation, std::span<const double> t_f,
                        std::span<const double> t_p) {
  const auto p_seg = permeate_inlet(orientation);
  if (t_f.size() != grid.segment(Segment::Gamma1).nodes.size()) {
    throw ValidationError("feed inlet trace must have one value per gamma1 node");
  }
  if (t_p.size() != grid.segment(p_seg).nodes.size()) {
    throw ValidationError(std::string("permeate inlet trace must have one value per ") +
                          segment_name(p_seg) + " node");
  }
  BoundaryData data;
  data[Segment::Gamma1] = TracePair::zeros(grid, Segment::Gamma1);
  data[Segment::Gamma1].f.assign(t_f.begin(), t_f.end());
  if (p_seg != Segment::Gamma1) data[p_seg] = TracePair::zeros(grid, p_seg);
  data[p_seg].p.assign(t_p.begin(), t_p.end());
  return data;
}

FieldPair solve_stationary(const DiscreteOperator& op, const BoundaryData& data,
                           const FieldPair* source) {
  const Vector b = op.rhs_bc(data);
  SparseMatrix system = op.matrix();
  Vector rhs = -b;
  if (source) {
    check_matches(op.grid(), *source);
    rhs -= pack(*source);
  }
  for (std::size_t row = 0; row < op.unknowns(); ++row) {
    if (!op.is_dirichlet(row)) continue;
    const auto r = static_cast<Eigen::Index>(row);
    system.coeffRef(r, r) = 1.0;
    rhs[r] = b[r];
  }
  system.makeCompressed();
  return unpack(op.grid(), solve_linear(system, rhs));
}

FieldPair solve_steady(const Grid& grid, const PhysicalParams& params, std::span<const double> t_f,
                       std::span<const double> t_p) {
  const auto op = assemble(grid, params, inlet_bc(params.orientation));
  return solve_stationary(op, inlet_data(grid, params.orientation, t_f, t_p));
}

double steady_residual(const Grid& grid, const PhysicalParams& params, const FieldPair& w,
                       std::span<const double> t_f, std::span<const double> t_p) {
  const auto op = assemble(grid, params, inlet_bc(params.orientation));
  const Vector r = op.residual(w, inlet_data(grid, params.orientation, t_f, t_p));
  return weighted_norm(grid, unpack(grid, r), params);
}

std::vector<TimedState> run_inlet_transient(const Grid& grid, const PhysicalParams& params,
                                            std::span<const double> t_f,
                                            std::span<const double> t_p, const FieldPair& w0,
                                            double dt, double horizon, std::size_t sample_every) {
  if (sample_every == 0) throw ValidationError("sample_every must be at least 1");
  check_matches(grid, w0);
  const BackwardEuler stepper(assemble(grid, params, inlet_bc(params.orientation)), dt);
  const auto data = inlet_data(grid, params.orientation, t_f, t_p);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));

  std::vector<TimedState> history{{0.0, w0}};
  FieldPair w = w0;
  for (std::size_t n = 1; n <= steps; ++n) {
    w = stepper.step(w, data);
    if (n % sample_every == 0) history.push_back({static_cast<double>(n) * dt, w});
  }
  return history;
}

LogLinearFit fit_exponential(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size() || t.size() < 2) {
    throw ValidationError("exponential fit needs matching samples, at least two");
  }
  const double n = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::vector<double> y(values.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(values[k] > 0.0)) throw ValidationError("exponential fit needs positive values");
    y[k] = std::log(values[k]);
    st += t[k];
    sy += y[k];
    stt += t[k] * t[k];
    sty += t[k] * y[k];
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw ValidationError("exponential fit needs distinct sample times");
  LogLinearFit fit;
  fit.slope = (n * sty - st * sy) / denom;
  fit.intercept = (sy - fit.slope * st) / n;
  const double mean = sy / n;
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double model = fit.intercept + fit.slope * t[k];
    ss_res += (y[k] - model) * (y[k] - model);
    ss_tot += (y[k] - mean) * (y[k] - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

SettlingResult settling_rate(const Grid& grid, const PhysicalParams& params,
                             std::span<const TimedState> history, const FieldPair& reference,
                             double window_start) {
  std::vector<double> times;
  std::vector<double> gaps;
  for (const auto& sample : history) {
    if (sample.t < window_start) continue;
    times.push_back(sample.t);
    gaps.push_back(weighted_norm(grid, sample.w - reference, params));
  }
  if (times.size() < 10) {
    throw ValidationError("settling rate needs at least 10 samples after t = " +
                          std::to_string(window_start) + ", got " + std::to_string(times.size()));
  }
  SettlingResult result;
  result.samples = times.size();
  for (double g : gaps) {
    if (g < kSettlingFloor) {
      result.saturated = true;
      return result;
    }
  }
  const auto fit = fit_exponential(times, gaps);
  result.rate = -fit.slope;
  result.r_squared = fit.r_squared;
  return result;
}

}  // namespace dcmd
