#include "dcmd/io/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include "dcmd/errors.hpp"
#include "dcmd/io/output.hpp"
#include "dcmd/io/scenario_config.hpp"
#include "dcmd/steady.hpp"

namespace dcmd::io {

namespace fs = std::filesystem;

std::pair<std::size_t, std::size_t> parse_grid_size(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used_a = 0, used_b = 0;
    const auto a = std::stoul(text.substr(0, x), &used_a);
    const auto b = std::stoul(text.substr(x + 1), &used_b);
    if (used_a != x || used_b != text.size() - x - 1) throw std::invalid_argument("trailing text");
    return {a, b};
  } catch (const std::exception&) {
    throw ValidationError("grid must look like NXxNY, got '" + text + "'");
  }
}

namespace {

struct SimulateOptions {
  std::string scenario;
  std::string out;
  std::string grid;
  std::optional<std::size_t> snapshot_every;
};

struct SteadyOptions {
  std::string out;
  std::string scenario;
  std::string grid = "26x51";
  double length = 2.0;
  double tf = 60.0;
  double tp = 20.0;
  std::string orientation;
};

struct VerifyOptions {
  std::string grid = "5x9";
  std::string scenario;
  std::string out;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
};

struct ConvergenceOptions {
  std::string out;
  std::size_t levels = 4;
};

int simulate(const SimulateOptions& o, std::ostream& out) {
  ScenarioConfig config = load_config(o.scenario);
  if (!o.grid.empty()) std::tie(config.nx, config.ny) = parse_grid_size(o.grid);
  if (o.snapshot_every) config.snapshot_every = *o.snapshot_every;
  const Scenario scenario = to_scenario(config);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  const fs::path snaps = dir / "snapshots";
  if (config.snapshot_every > 0) fs::create_directories(snaps);

  auto on_state = [&](const ClosedLoopState& s) {
    if (config.snapshot_every > 0 && s.step % config.snapshot_every == 0) {
      write_state_snapshots(snaps, scenario.grid, s);
    }
  };
  const auto result = run_closed_loop(scenario, on_state);
  write_file_atomic(dir / "scenario.toml", serialize(config));
  write_file_atomic(dir / "metrics.csv", format_metrics(result.metrics));

  const auto& last = result.metrics.back();
  out << "steps " << result.metrics.size() - 1 << ", t = " << last.t
      << ", tracking_error = " << last.tracking_error
      << ", observer_error = " << last.observer_error << "\n";
  return kExitOk;
}

int steady(const SteadyOptions& o, std::ostream& out) {
  PhysicalParams params = PhysicalParams::nominal();
  auto [nx, ny] = parse_grid_size(o.grid);
  double length = o.length;
  if (!o.scenario.empty()) {
    const auto config = load_config(o.scenario);
    params = config.physics;
    nx = config.nx;
    ny = config.ny;
    length = config.length;
  }
  if (o.orientation == "cocurrent") params.orientation = Orientation::CoCurrent;
  else if (o.orientation == "countercurrent") params.orientation = Orientation::CounterCurrent;
  params.validate();
  const Grid grid = make_grid(nx, ny, length);
  const std::vector<double> tf(grid.nx(), o.tf);
  const std::vector<double> tp(grid.nx(), o.tp);
  const FieldPair w = solve_steady(grid, params, tf, tp);
  const double residual = steady_residual(grid, params, w, tf, tp);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_snapshot(dir, "steady_f", grid, 0.0, 0, w.f);
  write_snapshot(dir, "steady_p", grid, 0.0, 0, w.p);
  out << "steady solution on " << grid.nx() << "x" << grid.ny() << ", residual " << residual << "\n";
  return kExitOk;
}

int verify(const VerifyOptions& o, std::ostream& out) {
  PhysicalParams params = PhysicalParams::nominal();
  double length = 2.0;
  if (!o.scenario.empty()) {
    const auto config = load_config(o.scenario);
    params = config.physics;
    length = config.length;
  }
  const auto [nx, ny] = parse_grid_size(o.grid);
  const auto checks = run_verification(make_grid(nx, ny, length), params, o.trials, o.seed);
  const std::string report = format_report(checks);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_file_atomic(fs::path(o.out) / "verify_report.txt", report);
  }
  out << report;
  for (const auto& c : checks) {
    if (!c.passed) return kExitNumerical;
  }
  return kExitOk;
}

int convergence(const ConvergenceOptions& o, std::ostream& out) {
  if (o.levels < 3) throw ValidationError("--levels must be at least 3");
  std::vector<std::size_t> nx;
  std::vector<double> dts;
  for (std::size_t k = 0; k < o.levels; ++k) {
    nx.push_back(10 * (std::size_t{1} << k) + 1);
    dts.push_back(0.1 / static_cast<double>(std::size_t{1} << k));
  }
  const auto params = sample_flow(PhysicalParams::nominal());
  const auto space = spatial_convergence(params, nx);
  const auto time = temporal_convergence(params, dts);
  const std::string csv = format_convergence(space, time);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_file_atomic(fs::path(o.out) / "convergence.csv", csv);
  }
  out << csv << "min spatial order " << space.min_order() << ", min temporal order "
      << time.min_order() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DCMD plant simulation, output tracking and operator verification", "dcmd"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the closed loop and write metrics.csv");
  sim_cmd->add_option("--scenario", sim.scenario, "Scenario document")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--out", sim.out, "Output directory")->required();
  sim_cmd->add_option("--grid", sim.grid, "Grid override NXxNY");
  sim_cmd->add_option("--snapshot-every", sim.snapshot_every, "Snapshot interval in steps (0 = none)");

  SteadyOptions st;
  auto* st_cmd = app.add_subcommand("steady", "Solve the stationary inlet problem");
  st_cmd->add_option("--out", st.out, "Output directory")->required();
  st_cmd->add_option("--scenario", st.scenario, "Take physics and grid from a scenario")->check(CLI::ExistingFile);
  st_cmd->add_option("--grid", st.grid, "Grid NXxNY")->capture_default_str();
  st_cmd->add_option("--length", st.length, "Domain height L")->capture_default_str();
  st_cmd->add_option("--tf", st.tf, "Feed inlet temperature")->capture_default_str();
  st_cmd->add_option("--tp", st.tp, "Permeate inlet temperature")->capture_default_str();
  st_cmd->add_option("--orientation", st.orientation, "cocurrent or countercurrent")
      ->check(CLI::IsMember({"cocurrent", "countercurrent"}));

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Symmetry, dissipativity and spectrum checks");
  ver_cmd->add_option("--grid", ver.grid, "Grid NXxNY")->capture_default_str();
  ver_cmd->add_option("--scenario", ver.scenario, "Take physics from a scenario")->check(CLI::ExistingFile);
  ver_cmd->add_option("--out", ver.out, "Directory for verify_report.txt");
  ver_cmd->add_option("--trials", ver.trials, "Random probes per check")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Probe seed")->capture_default_str();

  ConvergenceOptions conv;
  auto* conv_cmd = app.add_subcommand("convergence", "Manufactured-solution convergence ladder");
  conv_cmd->add_option("--out", conv.out, "Directory for convergence.csv");
  conv_cmd->add_option("--levels", conv.levels, "Refinement levels (>= 3)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sim_cmd) return simulate(sim, out);
    if (*st_cmd) return steady(st, out);
    if (*ver_cmd) return verify(ver, out);
    if (*conv_cmd) return convergence(conv, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace dcmd::io
