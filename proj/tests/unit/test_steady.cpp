#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dcmd/errors.hpp"
#include "dcmd/steady.hpp"

using namespace dcmd;

TEST(Steady, EqualConstantInlets) {
  const auto g = make_grid(9, 17, 2.0);
  for (auto o : {Orientation::CoCurrent, Orientation::CounterCurrent}) {
    auto prm = PhysicalParams::nominal();
    prm.orientation = o;
    const std::vector<double> t(g.nx(), 42.0);
    const auto w = solve_steady(g, prm, t, t);
    for (double v : w.f) EXPECT_NEAR(v, 42.0, 1e-9);
    for (double v : w.p) EXPECT_NEAR(v, 42.0, 1e-9);
  }
}

TEST(Steady, ZeroInletsGiveZero) {
  const auto g = make_grid(9, 17, 2.0);
  const std::vector<double> z(g.nx(), 0.0);
  const auto w = solve_steady(g, PhysicalParams::nominal(), z, z);
  EXPECT_EQ(l2_norm_domain(g, w), 0.0);
}

TEST(Steady, HotFeedStaysAbovePermeateAndMatchesLongTransient) {
  const auto g = make_grid(11, 21, 2.0);
  auto prm = PhysicalParams::nominal();
  prm.orientation = Orientation::CounterCurrent;
  const std::vector<double> tf(g.nx(), 60.0), tp(g.nx(), 20.0);
  const auto w = solve_steady(g, prm, tf, tp);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_GE(w.f[k], w.p[k] - 1e-12);
  EXPECT_LT(steady_residual(g, prm, w, tf, tp), 1e-9);

  const auto history = run_inlet_transient(g, prm, tf, tp, FieldPair(g), 0.05, 30.0, 600);
  EXPECT_LT(weighted_norm(g, history.back().w - w, prm), 1e-6);
}

TEST(Steady, InletDataLengthChecked) {
  const auto g = make_grid(5, 9, 2.0);
  const std::vector<double> bad(3, 1.0), ok(5, 1.0);
  EXPECT_THROW(solve_steady(g, PhysicalParams::nominal(), bad, ok), ValidationError);
}

TEST(Settling, SyntheticExponentialRate) {
  const auto g = make_grid(4, 4, 1.0);
  const auto prm = PhysicalParams::nominal();
  const auto shape = FieldPair::sample(g, [](double x, double) { return 1.0 + x; }, [](double, double y) { return y; });
  std::vector<TimedState> history;
  for (int n = 0; n <= 40; ++n) {
    const double t = 0.05 * n;
    FieldPair w = shape;
    for (auto& v : w.f) v *= 3.0 * std::exp(-2.0 * t);
    for (auto& v : w.p) v *= 3.0 * std::exp(-2.0 * t);
    history.push_back({t, w});
  }
  const auto r = settling_rate(g, prm, history, FieldPair(g));
  EXPECT_FALSE(r.saturated);
  EXPECT_NEAR(r.rate, 2.0, 1e-6);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
}

TEST(Settling, ConstantHistorySaturates) {
  const auto g = make_grid(4, 4, 1.0);
  const auto ref = FieldPair::sample(g, [](double, double) { return 5.0; }, [](double, double) { return 1.0; });
  std::vector<TimedState> history;
  for (int n = 0; n < 12; ++n) history.push_back({0.1 * n, ref});
  EXPECT_TRUE(settling_rate(g, PhysicalParams::nominal(), history, ref).saturated);
}

TEST(Settling, TooFewSamples) {
  const auto g = make_grid(4, 4, 1.0);
  std::vector<TimedState> history(5, TimedState{0.0, FieldPair(g)});
  for (int n = 0; n < 5; ++n) history[n].t = n;
  EXPECT_THROW(settling_rate(g, PhysicalParams::nominal(), history, FieldPair(g)), ValidationError);
}

TEST(Settling, NominalTransientHasPositiveRate) {
  const auto g = make_grid(11, 21, 2.0);
  const auto prm = PhysicalParams::nominal();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 80.0);
  FieldPair w0(g);
  for (auto& v : w0.f) v = d(rng);
  for (auto& v : w0.p) v = d(rng);
  const std::vector<double> tf(g.nx(), 60.0), tp(g.nx(), 20.0);
  const auto history = run_inlet_transient(g, prm, tf, tp, w0, 0.01, 5.0, 10);
  const auto r = settling_rate(g, prm, history, solve_steady(g, prm, tf, tp), 1.0);
  EXPECT_FALSE(r.saturated);
  EXPECT_GT(r.rate, 0.0);
}
