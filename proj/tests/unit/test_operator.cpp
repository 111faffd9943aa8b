#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dcmd/discrete_operator.hpp"
#include "dcmd/errors.hpp"
#include "dcmd/steady.hpp"

using namespace dcmd;

namespace {

BcSpec all_dirichlet() {
  BcSpec bc;
  for (auto s : kAllSegments) bc.set(s, BoundaryCondition::dirichlet());
  return bc;
}

BcSpec membrane_only() {
  BcSpec bc;
  bc.set(Segment::Gamma4, BoundaryCondition::robin_coupled());
  return bc;
}

double entry(const DiscreteOperator& op, std::size_t r, std::size_t c) {
  return op.matrix().coeff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

}  // namespace

TEST(Operator, FivePointStencil) {
  const auto g = make_grid(3, 3, 1.0);
  OperatorCoefficients c;
  const auto op = assemble(g, c, all_dirichlet());
  const auto k = g.index(1, 1);
  EXPECT_DOUBLE_EQ(entry(op, k, k), -16.0);
  for (auto nb : {g.index(0, 1), g.index(2, 1), g.index(1, 0), g.index(1, 2)}) {
    EXPECT_DOUBLE_EQ(entry(op, k, nb), 4.0);
  }
  for (std::size_t r = 0; r < op.unknowns(); ++r) {
    EXPECT_EQ(op.is_dirichlet(r), r != k && r != g.size() + k);
  }
}

TEST(Operator, MembraneCouplingEntries) {
  const auto g = make_grid(5, 9, 2.0);
  const auto prm = PhysicalParams::nominal();
  const auto op = assemble(g, prm, inlet_bc(Orientation::CoCurrent));
  const auto k = g.index(4, 4);
  const auto n = g.size();
  EXPECT_NEAR(entry(op, k, n + k), 2.0 * prm.alpha_f * prm.gamma_f / g.hx(), 1e-12);
  EXPECT_NEAR(entry(op, n + k, k), 2.0 * prm.alpha_p * prm.gamma_p / g.hx(), 1e-12);
  EXPECT_GT(entry(op, k, n + k), 0.0);
}

TEST(Operator, ConstantsInKernelOfFluxProblem) {
  const auto g = make_grid(7, 11, 2.0);
  const auto op = assemble(g, PhysicalParams::nominal(), membrane_only());
  const auto c = FieldPair::sample(g, [](double, double) { return 3.25; }, [](double, double) { return 3.25; });
  const auto r = op.apply(c);
  for (double v : r.f) EXPECT_NEAR(v, 0.0, 1e-12);
  for (double v : r.p) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Operator, GhostEliminationExactForAffineFields) {
  const auto g = make_grid(6, 11, 2.0);
  const BcSpec bc = inlet_bc(Orientation::CounterCurrent);
  const auto prm = PhysicalParams::nominal();
  const auto op = assemble(g, prm, bc);
  auto f = [](double x, double y) { return 2.0 + 0.5 * x - 0.25 * y; };
  auto p = [](double x, double y) { return -1.0 + 0.3 * x + 0.75 * y; };
  const auto w = FieldPair::sample(g, f, p);

  BoundaryData data;
  for (auto s : kAllSegments) data[s] = TracePair::zeros(g, s);
  for (std::size_t m = 0; m < g.nx(); ++m) {
    const double x = g.x(m);
    data[Segment::Gamma1].f[m] = f(x, 0.0);
    data[Segment::Gamma1].p[m] = -0.75;
    data[Segment::Gamma3].f[m] = -0.25;
    data[Segment::Gamma3].p[m] = p(x, 2.0);
  }
  for (std::size_t m = 0; m < g.ny(); ++m) {
    const double y = g.y(m);
    data[Segment::Gamma2].f[m] = -0.5;
    data[Segment::Gamma2].p[m] = -0.3;
    const double jump = f(1.0, y) - p(1.0, y);
    data[Segment::Gamma4].f[m] = 0.5 + prm.gamma_f * jump;
    data[Segment::Gamma4].p[m] = 0.3 - prm.gamma_p * jump;
  }
  const Vector r = op.residual(w, data);
  EXPECT_LT(r.lpNorm<Eigen::Infinity>(), 1e-11);
}

TEST(Operator, RhsHoldsDirichletValues) {
  const auto g = make_grid(4, 5, 1.0);
  const auto op = assemble(g, PhysicalParams::nominal(), inlet_bc(Orientation::CoCurrent));
  const std::vector<double> tf(4, 60.0), tp(4, 20.0);
  const Vector b = op.rhs_bc(inlet_data(g, Orientation::CoCurrent, tf, tp));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(b[static_cast<Eigen::Index>(g.index(i, 0))], 60.0);
    EXPECT_EQ(b[static_cast<Eigen::Index>(g.size() + g.index(i, 0))], 20.0);
  }
}

TEST(Operator, RejectsMisplacedMembraneCondition) {
  BcSpec bc;
  bc.set(Segment::Gamma1, BoundaryCondition::robin_coupled());
  EXPECT_THROW(assemble(make_grid(4, 4, 1.0), PhysicalParams::nominal(), bc), ValidationError);
}

TEST(BackwardEulerStep, ZeroStaysZero) {
  const auto g = make_grid(6, 11, 2.0);
  const auto op = assemble(g, PhysicalParams::nominal(), membrane_only());
  FieldPair w(g);
  for (int n = 0; n < 5; ++n) w = step_backward_euler(op, w, n * 0.1, 0.1);
  EXPECT_EQ(l2_norm_domain(g, w), 0.0);
}

TEST(BackwardEulerStep, FineStepMeetsResidualContract) {
  const auto g = make_grid(101, 201, 2.0);
  const BackwardEuler be(assemble(g, PhysicalParams::nominal(), inlet_bc(Orientation::CoCurrent)), 2e-3);
  const auto w = FieldPair::sample(g, [](double x, double y) { return std::sin(3 * x) + y; }, [](double x, double) { return x; });
  const std::vector<double> tf(g.nx(), 1.0), tp(g.nx(), 0.0);
  const auto rep = be.step_with_report(w, inlet_data(g, Orientation::CoCurrent, tf, tp));
  EXPECT_LE(rep.relative_residual, 1e-10);
}

TEST(BackwardEulerStep, RejectsNonPositiveStep) {
  const auto g = make_grid(4, 4, 1.0);
  EXPECT_THROW(BackwardEuler(assemble(g, PhysicalParams::nominal(), membrane_only()), 0.0), ValidationError);
}

TEST(BackwardEulerStep, UpwindSchemeIsStable) {
  const auto g = make_grid(11, 21, 2.0);
  PhysicalParams prm = PhysicalParams::nominal();
  prm.beta_f = 20.0;
  prm.beta_p = 15.0;
  prm.orientation = Orientation::CounterCurrent;
  const auto op = assemble(g, prm, inlet_bc(prm.orientation), 1.0, AdvectionScheme::Upwind);
  const BackwardEuler be(op, 0.01);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  FieldPair w(g);
  for (auto& v : w.f) v = d(rng);
  for (auto& v : w.p) v = d(rng);
  BoundaryData zero;
  double last = l2_norm_domain(g, w);
  for (int n = 0; n < 50; ++n) {
    w = be.step(w, zero);
    const double now = l2_norm_domain(g, w);
    EXPECT_LE(now, last * (1.0 + 1e-12));
    last = now;
  }
}
