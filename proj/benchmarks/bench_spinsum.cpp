#include "spinsum/catalog.hpp"
#include "spinsum/eval.hpp"
#include "spinsum/pachner.hpp"
#include "spinsum/tft.hpp"

#include <benchmark/benchmark.h>

using namespace spinsum;

static void BM_TorusClifford(benchmark::State& state) {
  Evaluator ev(builtin_clifford());
  auto t = spin_torus(BoundaryType::R, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(t.tri, t.signs, t.types));
}
BENCHMARK(BM_TorusClifford);

static void BM_CylinderByAlgebra(benchmark::State& state) {
  auto names = builtin_algebra_names();
  Evaluator ev(builtin_algebra(names[state.range(0)]));
  auto c = spin_cylinder(BoundaryType::NS, 1);
  state.SetLabel(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(c.tri, c.signs, c.types));
}
BENCHMARK(BM_CylinderByAlgebra)->DenseRange(0, 3);

static void BM_PantsTwistedMatrix(benchmark::State& state) {
  Evaluator ev(builtin_algebra("twisted-matrix-3-f3"));
  auto p = spin_pants(BoundaryType::NS, BoundaryType::R, BoundaryType::R, 1, -1);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(p.tri, p.signs, p.types));
}
BENCHMARK(BM_PantsTwistedMatrix)->Unit(benchmark::kMillisecond);

static void BM_GenusClifford(benchmark::State& state) {
  Evaluator ev(builtin_clifford());
  auto s = spin_genus(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(s.tri, s.signs, {}));
}
BENCHMARK(BM_GenusClifford)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_PlanContraction(benchmark::State& state) {
  auto tri = genus_g_closed(static_cast<int>(state.range(0)));
  auto g = build_graph(tri, Signs(tri.num_edges(), 1));
  auto shape = network_shape(g);
  for (auto _ : state) benchmark::DoNotOptimize(plan_contraction(shape));
}
BENCHMARK(BM_PlanContraction)->DenseRange(1, 4);

static void BM_Classify(benchmark::State& state) {
  auto tri = genus_g_closed(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_spin_structures(tri));
}
BENCHMARK(BM_Classify)->DenseRange(1, 3);

static void BM_Pachner22(benchmark::State& state) {
  auto c = spin_pants(BoundaryType::NS, BoundaryType::NS, BoundaryType::NS, 1, 1);
  auto targets = pachner_targets(c.tri, PachnerKind::TwoTwo);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_pachner(c.tri, c.signs, {PachnerKind::TwoTwo, targets[i % targets.size()]}));
    ++i;
  }
}
BENCHMARK(BM_Pachner22);

static void BM_SignScanTorus(benchmark::State& state) {
  auto A = builtin_clifford();
  auto torus = builtin_surface("torus");
  for (auto _ : state) benchmark::DoNotOptimize(statistical_sign_sum(torus, A));
}
BENCHMARK(BM_SignScanTorus)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
