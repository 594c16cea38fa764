// Serial reference vs OpenMP versions of the three batch kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "nsmop/parallel.hpp"
#include "nsmop/problems.hpp"
#include "nsmop/subdivision.hpp"

using namespace nsmop;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SolveBatch(benchmark::State& state) {
  auto entry = problems::table1_entry(static_cast<int>(state.range(1)));
  const auto starts = problems::grid_points(*entry.problem.benchmark_box(), 10);
  const SolverConfig cfg;
  for (auto _ : state) {
    auto r = solve_batch(entry.problem, starts, cfg, mode(state));
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(starts.size()));
}

void BM_Select(benchmark::State& state) {
  Problem p = problems::crescent_mifflin2();
  const SolverConfig cfg;
  auto g = subdivision::descent_map(p, cfg, 15);
  subdivision::BoxCollection c =
      subdivision::initial_collection({Vector::Constant(2, -0.05), Vector::Constant(2, 3.05), 0});
  for (int i = 0; i < 4; ++i) c = subdivision::select(subdivision::subdivide(c), g, 5).collection;
  const auto next = subdivision::subdivide(c);
  for (auto _ : state) {
    auto sel = subdivision::select(next, g, 5, mode(state));
    benchmark::DoNotOptimize(sel);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(next.boxes.size() * 25));
}

void BM_NonDominated(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> vals;
  for (int64_t i = 0; i < state.range(1); ++i) {
    Vector v(2);
    v << u(rng), u(rng);
    vals.push_back(v);
  }
  for (auto _ : state) {
    auto m = nondominated_mask(vals, mode(state));
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_SolveBatch)->ArgsProduct({{0, 1}, {1, 16, 18}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Select)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NonDominated)->ArgsProduct({{0, 1}, {1000, 8000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
