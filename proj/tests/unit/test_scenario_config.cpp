#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "dcmd/errors.hpp"
#include "dcmd/io/scenario_config.hpp"

using namespace dcmd;
using namespace dcmd::io;

namespace {

const std::filesystem::path kPresets{DCMD_PRESET_DIR};

const char* kMinimal = R"([geometry]
nx = 5
ny = 9
length = 2.0

[physics]
alpha_f = 3.0
alpha_p = 3.5
gamma_f = 0.2
gamma_p = 0.1

[time]
dt = 0.01
horizon = 0.1
)";

std::string generated_expression(std::mt19937_64& rng, int depth, bool with_y) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 3);
  std::uniform_real_distribution<double> num(-9.0, 9.0);
  switch (pick(rng)) {
    case 0: return "t";
    case 1: return "x";
    case 2: return with_y ? "y" : "pi";
    case 3: return Expression::constant(std::round(num(rng) * 100) / 100).text();
    case 4: return "sin(" + generated_expression(rng, depth - 1, with_y) + ")";
    case 5: return "(" + generated_expression(rng, depth - 1, with_y) + " * " + generated_expression(rng, depth - 1, with_y) + ")";
    default: return generated_expression(rng, depth - 1, with_y) + " - " + generated_expression(rng, depth - 1, with_y);
  }
}

SignalSpec generated_signal(std::mt19937_64& rng) {
  SignalSpec s;
  if (rng() % 2) {
    std::uniform_real_distribution<double> v(-5.0, 5.0);
    double t = v(rng);
    for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) {
      s.table.push_back({t, v(rng)});
      t += 0.1 + std::abs(v(rng));
    }
  } else {
    auto text = generated_expression(rng, 3, false);
    s.expression = Expression::parse(text, {io::Variable::T, io::Variable::X});
  }
  return s;
}

Expression generated_initial(std::mt19937_64& rng) {
  std::string text = generated_expression(rng, 3, true);
  for (auto& c : text) {
    if (c == 't') c = 'y';
  }
  return Expression::parse(text, {io::Variable::X, io::Variable::Y});
}

}  // namespace

TEST(ScenarioConfig, NominalPresetMatchesDefaults) {
  const auto c = load_config(kPresets / "nominal.toml");
  EXPECT_EQ(c.nx, 101u);
  EXPECT_EQ(c.ny, 201u);
  EXPECT_EQ(c.length, 2.0);
  EXPECT_EQ(c.physics, PhysicalParams::nominal());
  EXPECT_EQ(c.dt, 2e-3);
  EXPECT_EQ(c.horizon, 10.0);

  const auto s = to_scenario(c);
  const auto ref = nominal_scenario(101, 201);
  EXPECT_EQ(s.steps(), 5000u);
  EXPECT_EQ(s.w0, ref.w0);
  for (const double t : {0.0, 0.7, 3.3}) {
    for (const double x : {0.0, 0.25, 1.0}) {
      EXPECT_NEAR(s.reference(t, x)[0], ref.reference(t, x)[0], 1e-13);
      EXPECT_NEAR(s.reference(t, x)[1], ref.reference(t, x)[1], 1e-13);
      EXPECT_NEAR(s.disturbance(t, x)[1], ref.disturbance(t, x)[1], 1e-15);
    }
  }
  const auto ci = load_config(kPresets / "nominal_ci.toml");
  EXPECT_EQ(ci.nx, 26u);
  EXPECT_EQ(ci.ny, 51u);
}

TEST(ScenarioConfig, ParsedNumericInitialFieldsMatchSampling) {
  const auto s = to_scenario(load_config(kPresets / "nominal_ci.toml"));
  const auto ref = nominal_scenario(26, 51);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    EXPECT_NEAR(s.w_hat0.p[k], ref.w_hat0.p[k], 1e-14);
    EXPECT_NEAR(s.v0.f[k], ref.v0.f[k], 1e-14);
  }
}

TEST(ScenarioConfig, OmittedSignalsAreZero) {
  const auto c = parse_config(std::string(kMinimal) + "\n[signals]\n");
  EXPECT_TRUE(c.disturbance_f.expression.is_zero_constant());
  EXPECT_TRUE(c.noise_p.expression.is_zero_constant());
  EXPECT_TRUE(c.plant_f.is_zero_constant());
  const auto s = to_scenario(c);
  EXPECT_EQ(s.reference(1.0, 0.5)[0], 0.0);
  EXPECT_EQ(s.params.orientation, Orientation::CoCurrent);
  EXPECT_EQ(s.scheme, AdvectionScheme::Centered);
}

TEST(ScenarioConfig, TablesInterpolateAndClamp) {
  const auto c = parse_config(std::string(kMinimal) +
                              "[signals]\ndisturbance_f = [[0, 1], [1, 3], [2, -1]]\nnoise_p = 0.5\n");
  EXPECT_EQ(c.disturbance_f(-1.0, 0.0), 1.0);
  EXPECT_EQ(c.disturbance_f(0.5, 0.3), 2.0);
  EXPECT_EQ(c.disturbance_f(1.5, 0.3), 1.0);
  EXPECT_EQ(c.disturbance_f(9.0, 0.3), -1.0);
  EXPECT_EQ(c.noise_p(4.0, 0.3), 0.5);
}

TEST(ScenarioConfig, UnknownKeyReportsLineAndColumn) {
  try {
    parse_config(std::string(kMinimal) + "[output]\n  snapshots = 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 16u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("snapshots"), std::string::npos);
  }
}

TEST(ScenarioConfig, UnknownSectionAndDuplicates) {
  EXPECT_THROW(parse_config(std::string(kMinimal) + "[extras]\n"), ParseError);
  EXPECT_THROW(parse_config(std::string(kMinimal) + "[time]\n"), ParseError);
  EXPECT_THROW(parse_config("[geometry]\nnx = 5\nnx = 6\n"), ParseError);
  EXPECT_THROW(parse_config("nx = 5\n"), ParseError);
}

TEST(ScenarioConfig, BadExpressionPointsInsideTheString) {
  try {
    parse_config(std::string(kMinimal) + "[signals]\nreference_f = \"sin(x * )\"\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 16u);
    EXPECT_EQ(e.column(), 24u);
  }
}

TEST(ScenarioConfig, MissingKeyIsNamed) {
  std::string text = kMinimal;
  text.erase(text.find("gamma_p = 0.1\n"), 14);
  try {
    parse_config(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("physics.gamma_p"), std::string::npos);
  }
}

TEST(ScenarioConfig, InvalidValuesAreNamed) {
  auto c = parse_config(kMinimal);
  c.dt = 0.0;
  try {
    to_scenario(c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("time.dt"), std::string::npos);
  }
  c = parse_config(kMinimal);
  c.horizon = 0.105;
  EXPECT_THROW(to_scenario(c), ValidationError);
  c = parse_config(kMinimal);
  c.physics.alpha_p = -1.0;
  EXPECT_THROW(to_scenario(c), ValidationError);
  c = parse_config(kMinimal);
  c.nx = 2;
  EXPECT_THROW(to_scenario(c), ValidationError);
}

TEST(ScenarioConfig, SerializeRoundTripsRandomConfigs) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pos(1e-3, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    ScenarioConfig c;
    c.nx = 3 + rng() % 200;
    c.ny = 3 + rng() % 400;
    c.length = pos(rng);
    c.physics.alpha_f = pos(rng);
    c.physics.alpha_p = pos(rng);
    c.physics.beta_f = rng() % 3 ? pos(rng) : 0.0;
    c.physics.beta_p = pos(rng);
    c.physics.gamma_f = pos(rng);
    c.physics.gamma_p = pos(rng);
    c.physics.orientation = rng() % 2 ? Orientation::CoCurrent : Orientation::CounterCurrent;
    c.advection = rng() % 2 ? AdvectionScheme::Centered : AdvectionScheme::Upwind;
    c.disturbance_f = generated_signal(rng);
    c.disturbance_p = generated_signal(rng);
    c.reference_f = generated_signal(rng);
    c.reference_p = generated_signal(rng);
    c.noise_f = generated_signal(rng);
    c.noise_p = generated_signal(rng);
    c.plant_f = generated_initial(rng);
    c.plant_p = generated_initial(rng);
    c.observer_f = generated_initial(rng);
    c.observer_p = generated_initial(rng);
    c.servo_f = generated_initial(rng);
    c.servo_p = generated_initial(rng);
    c.dt = pos(rng);
    c.horizon = pos(rng);
    c.snapshot_every = rng() % 1000;
    const auto text = serialize(c);
    ASSERT_EQ(parse_config(text), c) << text;
    EXPECT_EQ(serialize(parse_config(text)), text);
  }
}
