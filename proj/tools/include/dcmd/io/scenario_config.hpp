#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "dcmd/adrc.hpp"
#include "dcmd/io/expression.hpp"

namespace dcmd::io {

/// A boundary signal component: an expression over (t, x) or a table of (t, value) samples
/// interpolated linearly in t and held constant outside the table.
struct SignalSpec {
  Expression expression;
  std::vector<std::array<double, 2>> table;

  bool is_table() const noexcept { return !table.empty(); }
  double operator()(double t, double x) const;

  friend bool operator==(const SignalSpec&, const SignalSpec&) = default;
};

/// Textual scenario document. Sections and keys:
///   [geometry] nx, ny, length                                   (required)
///   [physics]  alpha_f, alpha_p, gamma_f, gamma_p               (required)
///              beta_f = 0, beta_p = 0, orientation = "cocurrent", advection = "centered"
///   [signals]  disturbance_f/_p, reference_f/_p, noise_f/_p     (default 0)
///   [initial]  plant_f/_p, observer_f/_p, servo_f/_p            (default 0)
///   [time]     dt, horizon                                      (required)
///   [output]   snapshot_every = 0
struct ScenarioConfig {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double length = 0.0;
  PhysicalParams physics;
  AdvectionScheme advection = AdvectionScheme::Centered;
  SignalSpec disturbance_f, disturbance_p;
  SignalSpec reference_f, reference_p;
  SignalSpec noise_f, noise_p;
  Expression plant_f, plant_p;
  Expression observer_f, observer_p;
  Expression servo_f, servo_p;
  double dt = 0.0;
  double horizon = 0.0;
  std::size_t snapshot_every = 0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ParseError (with line and column) on malformed text and ValidationError on unknown
/// or missing keys.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string serialize(const ScenarioConfig& config);

/// Validated simulation scenario; errors name the offending key.
Scenario to_scenario(const ScenarioConfig& config);
Scenario parse_scenario(const std::string& text);

}  // namespace dcmd::io
