#include <benchmark/benchmark.h>

#include "dcmd/adrc.hpp"
#include "dcmd/spectral.hpp"

using namespace dcmd;

namespace {

std::size_t ny_for(std::size_t nx) { return 2 * (nx - 1) + 1; }

void BM_Assemble(benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  const auto g = make_grid(nx, ny_for(nx), 2.0);
  const auto prm = PhysicalParams::nominal();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(g, prm, plant_bc()));
  state.SetLabel(std::to_string(2 * g.size()) + " unknowns");
}
BENCHMARK(BM_Assemble)->Arg(26)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  const auto g = make_grid(nx, ny_for(nx), 2.0);
  const auto op = assemble(g, PhysicalParams::nominal(), plant_bc());
  for (auto _ : state) benchmark::DoNotOptimize(BackwardEuler(op, 2e-3));
}
BENCHMARK(BM_Factorize)->Arg(26)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_BackwardEulerStep(benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  const auto g = make_grid(nx, ny_for(nx), 2.0);
  const BackwardEuler stepper(assemble(g, PhysicalParams::nominal(), plant_bc()), 2e-3);
  FieldPair w = nominal_scenario(nx, ny_for(nx)).w0;
  const BoundaryData data;
  for (auto _ : state) {
    w = stepper.step(w, data);
    benchmark::DoNotOptimize(w.f.data());
  }
}
BENCHMARK(BM_BackwardEulerStep)->Arg(26)->Arg(51)->Arg(101)->Unit(benchmark::kMicrosecond);

void BM_ClosedLoopStep(benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  auto s = nominal_scenario(nx, ny_for(nx));
  s.horizon = 1e6;
  ClosedLoop loop(s);
  for (auto _ : state) loop.advance();
}
BENCHMARK(BM_ClosedLoopStep)->Arg(26)->Arg(51)->Arg(101)->Unit(benchmark::kMicrosecond);

void BM_Spectrum(benchmark::State& state) {
  const auto g = make_grid(5, 9, 2.0);
  const auto op = assemble_generator(g, PhysicalParams::nominal(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(max_real_eigenvalue(op));
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
