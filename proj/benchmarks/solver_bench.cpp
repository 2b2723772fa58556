#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "sgdg/harness.hpp"

using namespace sgdg;

namespace {

RunConfig shock_tube(int p) {
  RunConfig c = default_config(CaseKind::kShuOsher);
  c.p = p;
  c.n = p + 2;
  return c;
}

void BM_Residual(benchmark::State &state) {
  const RunConfig config = shock_tube(static_cast<int>(state.range(0)));
  const Solver solver = make_solver(config);
  const FieldState u = initial_state(config, solver.discretization());
  for (auto _ : state) benchmark::DoNotOptimize(solver.residual(u));
  state.SetItemsProcessed(state.iterations() * solver.discretization().num_elements());
}
BENCHMARK(BM_Residual)->Arg(1)->Arg(3)->Arg(5);

void BM_ImexStep(benchmark::State &state) {
  const RunConfig config = default_config(CaseKind::kBurgers);
  const Solver solver = make_solver(config);
  const FieldState u = initial_state(config, solver.discretization());
  std::vector<double> gamma(solver.discretization().num_elements(),
                            static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solver.imex_step(u, 1e-3, gamma));
}
BENCHMARK(BM_ImexStep)->Arg(0)->Arg(10000000);

void BM_Sensor(benchmark::State &state) {
  const int p = static_cast<int>(state.range(0));
  const Discretization disc(build_uniform_mesh(0.0, 1.0, 64, p + 4), p);
  const FieldState u = project_initial(disc, 1, [](double x) {
    State s(1);
    s[0] = x < 0.5 ? std::sin(2 * std::numbers::pi * x) : 0.0;
    return s;
  });
  const Sensor sensor(disc, {});
  for (auto _ : state) benchmark::DoNotOptimize(sensor.evaluate(u));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Sensor)->Arg(2)->Arg(4)->Arg(8);

void BM_PenalizedProjection(benchmark::State &state) {
  const ElementSpace space(4, 8, {0.0, 1.0});
  const double cut[] = {0.37};
  const QuadratureOptions opts{.breakpoints = cut};
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_penalized(
        [](double x) { return x < 0.37 ? 1.0 : 0.0; }, space, 1e7, opts));
  }
}
BENCHMARK(BM_PenalizedProjection);

}  // namespace

BENCHMARK_MAIN();
