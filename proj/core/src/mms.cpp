#include "dcmd/mms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dcmd/discrete_operator.hpp"
#include "dcmd/errors.hpp"
#include "dcmd/steady.hpp"

namespace dcmd {

double ConvergenceStudy::min_order() const {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < levels.size(); ++k) worst = std::min(worst, levels[k].order);
  return worst;
}

namespace {

using Fn = std::function<double(double, double, double)>;

struct Exact {
  Fn value, dt, dx, dy, lap;
};

struct ExactPair {
  Exact f, p;
  const Exact& operator[](Component c) const { return c == Component::Feed ? f : p; }
};

ExactPair smooth_solution() {
  ExactPair e;
  e.f.value = [](double, double x, double y) { return 1.0 + std::sin(1.3 * x + 0.7 * y); };
  e.f.dt = [](double, double, double) { return 0.0; };
  e.f.dx = [](double, double x, double y) { return 1.3 * std::cos(1.3 * x + 0.7 * y); };
  e.f.dy = [](double, double x, double y) { return 0.7 * std::cos(1.3 * x + 0.7 * y); };
  e.f.lap = [](double, double x, double y) { return -(1.69 + 0.49) * std::sin(1.3 * x + 0.7 * y); };
  e.p.value = [](double, double x, double y) { return std::cos(0.9 * x - 0.5 * y); };
  e.p.dt = [](double, double, double) { return 0.0; };
  e.p.dx = [](double, double x, double y) { return -0.9 * std::sin(0.9 * x - 0.5 * y); };
  e.p.dy = [](double, double x, double y) { return 0.5 * std::sin(0.9 * x - 0.5 * y); };
  e.p.lap = [](double, double x, double y) { return -(0.81 + 0.25) * std::cos(0.9 * x - 0.5 * y); };
  return e;
}

ExactPair quadratic_solution() {
  ExactPair e;
  e.f.value = [](double t, double x, double y) { return (1.0 + x * x + 0.25 * y * y) * std::cos(2.0 * t); };
  e.f.dt = [](double t, double x, double y) { return -2.0 * (1.0 + x * x + 0.25 * y * y) * std::sin(2.0 * t); };
  e.f.dx = [](double t, double x, double) { return 2.0 * x * std::cos(2.0 * t); };
  e.f.dy = [](double t, double, double y) { return 0.5 * y * std::cos(2.0 * t); };
  e.f.lap = [](double t, double, double) { return 2.5 * std::cos(2.0 * t); };
  e.p.value = [](double t, double x, double y) { return 1.0 + (2.0 - x * x + 0.5 * x * y) * std::sin(2.0 * t); };
  e.p.dt = [](double t, double x, double y) { return 2.0 * (2.0 - x * x + 0.5 * x * y) * std::cos(2.0 * t); };
  e.p.dx = [](double t, double x, double y) { return (-2.0 * x + 0.5 * y) * std::sin(2.0 * t); };
  e.p.dy = [](double t, double x, double) { return 0.5 * x * std::sin(2.0 * t); };
  e.p.lap = [](double t, double, double) { return -2.0 * std::sin(2.0 * t); };
  return e;
}

FieldPair exact_field(const Grid& grid, const ExactPair& e, double t) {
  return FieldPair::sample(
      grid, [&](double x, double y) { return e.f.value(t, x, y); },
      [&](double x, double y) { return e.p.value(t, x, y); });
}

/// w*_t - (a lap w* - v w*_y - k w*).
FieldPair source_term(const Grid& grid, const OperatorCoefficients& c, const ExactPair& e,
                      double t) {
  auto residual = [&](Component comp) {
    const auto ci = static_cast<std::size_t>(comp);
    const Exact* x = &e[comp];
    return [&c, t, x, ci](double px, double py) {
      return x->dt(t, px, py) - (c.diffusion[ci] * x->lap(t, px, py) -
                                 c.velocity[ci] * x->dy(t, px, py) - c.decay[ci] * x->value(t, px, py));
    };
  };
  return FieldPair::sample(grid, residual(Component::Feed), residual(Component::Permeate));
}

BoundaryData exact_data(const Grid& grid, const BcSpec& bc, const OperatorCoefficients& c,
                        const ExactPair& e, double t) {
  BoundaryData data;
  for (auto s : kAllSegments) {
    const auto& seg = grid.segment(s);
    TracePair tr = TracePair::zeros(grid, s);
    for (std::size_t m = 0; m < seg.nodes.size(); ++m) {
      const auto k = seg.nodes[m];
      const double x = grid.x(grid.column_of(k));
      const double y = grid.y(grid.row_of(k));
      const double f = e.f.value(t, x, y);
      const double p = e.p.value(t, x, y);
      for (auto comp : {Component::Feed, Component::Permeate}) {
        const Exact& ex = e[comp];
        const auto& cond = bc.at(s, comp);
        const double w = ex.value(t, x, y);
        double dn = 0.0;
        switch (s) {
          case Segment::Gamma1: dn = -ex.dy(t, x, y); break;
          case Segment::Gamma2: dn = -ex.dx(t, x, y); break;
          case Segment::Gamma3: dn = ex.dy(t, x, y); break;
          case Segment::Gamma4: dn = ex.dx(t, x, y); break;
        }
        double value = 0.0;
        switch (cond.kind) {
          case BcKind::Dirichlet: value = w; break;
          case BcKind::NeumannFlux: value = dn; break;
          case BcKind::Robin: value = dn - cond.robin_coefficient * w; break;
          case BcKind::RobinCoupled:
            value = comp == Component::Feed ? dn + c.gamma_f * (f - p) : dn - c.gamma_p * (f - p);
            break;
        }
        tr[comp][m] = value;
      }
    }
    data[s] = std::move(tr);
  }
  return data;
}

std::size_t rows_for(std::size_t nx, double length) {
  return static_cast<std::size_t>(std::llround(length * static_cast<double>(nx - 1))) + 1;
}

void fill_orders(ConvergenceStudy& study, const std::vector<double>& steps) {
  for (std::size_t k = 0; k < study.levels.size(); ++k) {
    auto& lv = study.levels[k];
    lv.order = k == 0 ? std::numeric_limits<double>::quiet_NaN()
                      : std::log(study.levels[k - 1].error / lv.error) /
                            std::log(steps[k - 1] / steps[k]);
  }
}

}  // namespace

ConvergenceStudy spatial_convergence(const PhysicalParams& params,
                                     std::span<const std::size_t> nx_levels, double length) {
  params.validate();
  if (nx_levels.size() < 2) throw ValidationError("convergence ladder needs two levels or more");
  const ExactPair e = smooth_solution();
  const BcSpec bc = inlet_bc(params.orientation);
  ConvergenceStudy study;
  std::vector<double> steps;
  for (auto nx : nx_levels) {
    const Grid grid = make_grid(nx, rows_for(nx, length), length);
    const auto op = assemble(grid, params, bc);
    const FieldPair src = source_term(grid, op.coefficients(), e, 0.0);
    const FieldPair w = solve_stationary(op, exact_data(grid, bc, op.coefficients(), e, 0.0), &src);
    const double err = weighted_norm(grid, w - exact_field(grid, e, 0.0), params);
    study.levels.push_back({grid.nx(), grid.ny(), 0.0, err, 0.0});
    steps.push_back(grid.hx());
  }
  fill_orders(study, steps);
  return study;
}

ConvergenceStudy temporal_convergence(const PhysicalParams& params, std::span<const double> dts,
                                      std::size_t nx, double horizon, double length) {
  params.validate();
  if (dts.size() < 2) throw ValidationError("convergence ladder needs two levels or more");
  const ExactPair e = quadratic_solution();
  const BcSpec bc = inlet_bc(params.orientation);
  const Grid grid = make_grid(nx, rows_for(nx, length), length);
  const auto op = assemble(grid, params, bc);
  ConvergenceStudy study;
  std::vector<double> steps;
  for (double dt : dts) {
    const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
    if (n == 0 || std::abs(static_cast<double>(n) * dt - horizon) > 1e-9 * horizon) {
      throw ValidationError("time step must divide the horizon");
    }
    const BackwardEuler stepper(op, dt);
    FieldPair w = exact_field(grid, e, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const double t = static_cast<double>(k) * dt;
      const FieldPair src = source_term(grid, op.coefficients(), e, t);
      w = stepper.step(w, exact_data(grid, bc, op.coefficients(), e, t), &src);
    }
    const double err = weighted_norm(grid, w - exact_field(grid, e, horizon), params);
    study.levels.push_back({grid.nx(), grid.ny(), dt, err, 0.0});
    steps.push_back(dt);
  }
  fill_orders(study, steps);
  return study;
}

}  // namespace dcmd
