// Acceptance suite: one [PASS]/[FAIL] line per criterion.
//   dcmd_acceptance [--criterion N] [--work-dir DIR]
// Without --criterion all nine criteria run in order.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dcmd/adrc.hpp"
#include "dcmd/errors.hpp"
#include "dcmd/io/cli.hpp"
#include "dcmd/io/scenario_config.hpp"
#include "dcmd/mms.hpp"
#include "dcmd/spectral.hpp"
#include "dcmd/steady.hpp"

namespace fs = std::filesystem;
using namespace dcmd;
using std::numbers::pi;

namespace {

// Regression constants measured on the 26x51 preset and frozen.
constexpr double kObserverSlope = -2.0211;
constexpr double kDisturbanceBaseline = 3.663e-5;
constexpr double kRegressionTolerance = 0.10;

const fs::path kPresets{DCMD_PRESET_DIR};

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Scenario ci_scenario() { return io::to_scenario(io::load_config(kPresets / "nominal_ci.toml")); }

const ClosedLoopResult& nominal_run() {
  static const ClosedLoopResult result = run_closed_loop(ci_scenario());
  return result;
}

template <class F>
double window_mean(const std::vector<MetricsRow>& rows, double t0, double t1, F value) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.t >= t0 - 1e-9 && r.t <= t1 + 1e-9) {
      sum += value(r);
      ++n;
    }
  }
  if (n == 0) throw ValidationError("empty averaging window");
  return sum / static_cast<double>(n);
}

Outcome nominal_tracking() {
  const auto& rows = nominal_run().metrics;
  double peak = 0.0;
  for (const auto& r : rows) {
    if (r.t <= 1.0 + 1e-9) peak = std::max(peak, r.tracking_error);
  }
  const double final_error = rows.back().tracking_error;
  const double ratio = final_error / peak;

  std::vector<double> blocks;
  for (double t0 = 5.0; t0 < 10.0 - 1e-9; t0 += 0.5) {
    blocks.push_back(window_mean(rows, t0, t0 + 0.5, [](const MetricsRow& r) { return r.tracking_error; }));
  }
  std::size_t rises = 0;
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    if (blocks[k] > blocks[k - 1]) ++rises;
  }
  const bool passed = ratio <= 0.05 && rises == 0;
  return {passed, fmt("e(10) = %.4e, max e on [0,1] = %.4e, ratio = %.4f (<= 0.05), "
                      "increasing 0.5-blocks on [5,10] = %zu (0)",
                      final_error, peak, ratio, rises)};
}

Outcome observer_decay() {
  const auto& rows = nominal_run().metrics;
  std::vector<double> t, v;
  for (const auto& r : rows) {
    if (r.t >= 1.0 - 1e-9) {
      t.push_back(r.t);
      v.push_back(r.observer_error);
    }
  }
  const auto fit = fit_exponential(t, v);
  const bool regression = std::abs(fit.slope - kObserverSlope) <= kRegressionTolerance * std::abs(kObserverSlope);
  const bool passed = fit.slope < 0.0 && fit.r_squared >= 0.95 && regression;
  return {passed, fmt("slope = %.6f (< 0, frozen %.6f +/- 10%%), R^2 = %.6f (>= 0.95)", fit.slope,
                      kObserverSlope, fit.r_squared)};
}

Outcome disturbance_estimation() {
  const auto& rows = nominal_run().metrics;
  const auto s = ci_scenario();
  const double err = window_mean(rows, 8.0, 10.0, [](const MetricsRow& r) { return r.disturbance_error; });
  const double size = window_mean(rows, 8.0, 10.0, [&](const MetricsRow& r) {
    return l2_norm_boundary(s.grid, Segment::Gamma1, s.disturbance.sample(s.grid, r.t));
  });
  const double ratio = err / size;
  const bool regression = std::abs(err - kDisturbanceBaseline) <= kRegressionTolerance * kDisturbanceBaseline;
  return {ratio <= 0.10 && regression,
          fmt("mean |d - d_hat| on [8,10] = %.4e, mean |d| = %.4e, ratio = %.4e (<= 0.10), "
              "frozen baseline %.4e +/- 10%%",
              err, size, ratio, kDisturbanceBaseline)};
}

Outcome noise_robustness() {
  constexpr double a = 0.5;
  auto late_error = [](double amplitude) {
    Scenario s = ci_scenario();
    s.noise = BoundarySignal(Segment::Gamma1, [amplitude](double t, double x) {
      const double v = amplitude * std::sin(2.0 * t) * std::cos(pi * x);
      return std::array<double, 2>{v, v};
    });
    const auto rows = run_closed_loop(s).metrics;
    return window_mean(rows, 8.0, 10.0, [](const MetricsRow& r) { return r.tracking_error; });
  };
  const double e0 = window_mean(nominal_run().metrics, 8.0, 10.0,
                                [](const MetricsRow& r) { return r.tracking_error; });
  const double e1 = late_error(a);
  const double e2 = late_error(2.0 * a);
  const double ratio = e2 / e1;
  const bool passed = ratio >= 1.2 && ratio <= 3.0 && e0 < e1 && e0 < e2;
  return {passed, fmt("late tracking error: sigma=0 %.6e, a=%.2f %.6e, 2a %.6e, ratio = %.4f "
                      "(in [1.2, 3.0])",
                      e0, a, e1, e2, ratio)};
}

Outcome dissipativity() {
  const auto g = make_grid(5, 9, 2.0);
  bool passed = true;
  std::string detail;
  for (auto o : {Orientation::CoCurrent, Orientation::CounterCurrent}) {
    auto prm = PhysicalParams::nominal();
    prm.orientation = o;
    const double lambda = max_real_eigenvalue(assemble_generator(g, prm, 1.0));
    const double defect = check_weighted_symmetry(assemble_generator(g, prm, 0.0), prm, 50);
    passed = passed && lambda < -1e-8 && defect <= 1e-10;
    detail += fmt("%s: max Re(lambda) = %.6f (< -1e-8), symmetry defect = %.2e (<= 1e-10); ",
                  o == Orientation::CoCurrent ? "co-current" : "counter-current", lambda, defect);
  }
  detail.resize(detail.size() - 2);
  return {passed, detail};
}

Outcome steady_settling() {
  const auto g = make_grid(26, 51, 2.0);
  const std::vector<double> tf(g.nx(), 60.0), tp(g.nx(), 20.0);
  bool passed = true;
  std::string detail;
  for (auto o : {Orientation::CoCurrent, Orientation::CounterCurrent}) {
    auto prm = PhysicalParams::nominal();
    prm.orientation = o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(20.0, 60.0);
    FieldPair w0(g);
    for (auto& v : w0.f) v = u(rng);
    for (auto& v : w0.p) v = u(rng);
    const auto target = solve_steady(g, prm, tf, tp);
    const auto history = run_inlet_transient(g, prm, tf, tp, w0, 0.01, 15.0, 10);
    const auto settle = settling_rate(g, prm, history, target, 1.0);
    const double gap = weighted_norm(g, history.back().w - target, prm);
    passed = passed && !settle.saturated && settle.rate > 0.0 && gap <= 1e-6;
    detail += fmt("%s: rate = %.4f (> 0), final gap = %.2e (<= 1e-6); ",
                  o == Orientation::CoCurrent ? "co-current" : "counter-current", settle.rate, gap);
  }
  detail.resize(detail.size() - 2);
  return {passed, detail};
}

Outcome cocurrent_diagonalization() {
  PhysicalParams prm;
  prm.alpha_f = 3.0;
  prm.beta_f = 0.6;
  prm.alpha_p = 3.5;
  prm.beta_p = 0.7;
  prm.orientation = Orientation::CoCurrent;
  std::vector<double> gaps;
  std::string detail = "discrepancy";
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t nx = 10 * (std::size_t{1} << k) + 1;
    gaps.push_back(check_diagonalization(prm, make_grid(nx, 2 * nx - 1, 2.0), 1.0, 0.04 / (1 << k)));
    detail += fmt(" nx=%zu: %.3e", nx, gaps.back());
  }
  const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  return {decreasing && gaps[2] <= 1e-3, detail + " (decreasing, finest <= 1e-3)"};
}

Outcome scheme_orders() {
  const std::vector<std::size_t> nx{11, 21, 41, 81};
  const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  double spatial = INFINITY;
  for (auto o : {Orientation::CoCurrent, Orientation::CounterCurrent}) {
    auto prm = sample_flow(PhysicalParams::nominal());
    prm.orientation = o;
    spatial = std::min(spatial, spatial_convergence(prm, nx).min_order());
  }
  const double temporal = temporal_convergence(sample_flow(PhysicalParams::nominal()), dts).min_order();
  return {spatial >= 1.9 && temporal >= 0.9,
          fmt("min spatial order = %.4f (>= 1.9), min temporal order = %.4f (>= 0.9)", spatial, temporal)};
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const fs::path& work) {
  const auto preset = (kPresets / "nominal.toml").string();
  std::vector<std::string> outputs;
  for (const char* name : {"run_a", "run_b"}) {
    const auto dir = work / "determinism" / name;
    fs::remove_all(dir);
    std::ostringstream out, err;
    const int code = io::run_cli({"simulate", "--scenario", preset, "--out", dir.string()}, out, err);
    if (code != io::kExitOk) return {false, "simulate exited with " + std::to_string(code) + ": " + err.str()};
    outputs.push_back(read_bytes(dir / "metrics.csv"));
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, fmt("two runs of the 101x201 preset, metrics.csv sizes %zu and %zu bytes, %s",
                    outputs[0].size(), outputs[1].size(), same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria", "dcmd_acceptance"};
  int only = 0;
  std::string work = "acceptance_work";
  app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--work-dir", work, "Scratch directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"nominal_tracking", nominal_tracking},
      {"observer_decay", observer_decay},
      {"disturbance_estimation", disturbance_estimation},
      {"noise_robustness", noise_robustness},
      {"dissipativity", dissipativity},
      {"steady_settling", steady_settling},
      {"cocurrent_diagonalization", cocurrent_diagonalization},
      {"scheme_orders", scheme_orders},
      {"determinism", [&] { return determinism(work); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<std::size_t>(only) != k + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << k + 1 << " " << criteria[k].first << ": "
              << o.detail << fmt(" [%.1f s]", secs) << std::endl;
    if (!o.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
