#include <benchmark/benchmark.h>

#include <random>

#include "gtmp/akima.hpp"
#include "gtmp/metrics.hpp"
#include "gtmp/planner.hpp"
#include "harness.hpp"

using namespace gtmp;

namespace {

World random_map(std::size_t cells, double res, std::size_t rects, double margin = 0.0) {
  std::mt19937_64 rng(cells * 7919 + rects);
  std::vector<std::uint8_t> occ(cells * cells, 0);
  std::uniform_int_distribution<std::size_t> pos(0, cells - 1), side(cells / 50 + 1, cells / 8 + 1);
  for (std::size_t r = 0; r < rects; ++r) {
    const std::size_t x0 = pos(rng), y0 = pos(rng), w = side(rng), h = side(rng);
    for (std::size_t y = y0; y < std::min(cells, y0 + h); ++y) {
      for (std::size_t x = x0; x < std::min(cells, x0 + w); ++x) occ[y * cells + x] = 1;
    }
  }
  // keep the corners open for start and goal
  for (std::size_t y = 0; y < cells / 16; ++y) {
    for (std::size_t x = 0; x < cells / 16; ++x) {
      occ[y * cells + x] = 0;
      occ[(cells - 1 - y) * cells + (cells - 1 - x)] = 0;
    }
  }
  return World::from_grid(OccupancyGrid(cells, cells, std::move(occ), 0.0, 0.0, res), margin);
}

const World& desk_map() {
  static const World w = random_map(512, 0.02, 40);
  return w;
}

void BM_Plan(benchmark::State& state) {
  const World& w = desk_map();
  const PlannerParams p{static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 10,
                        static_cast<std::size_t>(state.range(2)), 1};
  const GoalSet goals(std::vector<Vector>{{10.0, 10.0}});
  for (auto _ : state) benchmark::DoNotOptimize(plan(w, Vector{0.1, 0.1}, goals, p));
  state.counters["work"] = static_cast<double>(p.M * p.N * p.N * (p.H + p.M) * p.B);
}
BENCHMARK(BM_Plan)->Args({3, 100, 100})->Args({2, 10, 4})->Args({5, 50, 4})->Args({10, 100, 4})->Args({20, 100, 4})
    ->Unit(benchmark::kMillisecond);

void BM_PlanAkima(benchmark::State& state) {
  const World& w = desk_map();
  const PlannerParams p{3, static_cast<std::size_t>(state.range(0)), 10, 20, 1};
  const GoalSet goals(std::vector<Vector>{{10.0, 10.0}});
  for (auto _ : state) benchmark::DoNotOptimize(plan_akima(w, Vector{0.1, 0.1}, goals, p));
}
BENCHMARK(BM_PlanAkima)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ValueIteration(benchmark::State& state) {
  const std::size_t M = static_cast<std::size_t>(state.range(0)), N = static_cast<std::size_t>(state.range(1));
  CostMatrices C(1, M, N, 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& c : C.start) c = u(rng);
  for (auto& c : C.inner) c = u(rng);
  for (auto& c : C.last) c = u(rng);
  const GoalSet goals(std::vector<Vector>{{0.0, 0.0}});
  for (auto _ : state) benchmark::DoNotOptimize(value_iteration(C, goals));
}
BENCHMARK(BM_ValueIteration)->Args({5, 50})->Args({20, 100});

void BM_MarginWorld(benchmark::State& state) {
  const std::size_t cells = static_cast<std::size_t>(state.range(0));
  const double res = 10.0 / static_cast<double>(cells);
  for (auto _ : state) benchmark::DoNotOptimize(random_map(cells, res, 30, 2.0 * res));
}
BENCHMARK(BM_MarginWorld)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Sinkhorn(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  EmpiricalPath a(n), b(n);
  for (auto& q : a) q = {u(rng), u(rng)};
  for (auto& q : b) q = {u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_distance(a, b));
}
BENCHMARK(BM_Sinkhorn)->Arg(5)->Arg(33);

void BM_CorridorTask(benchmark::State& state) {
  const World w = bench::make_corridor_world();
  bench::RunOptions opt;
  opt.params = {3, 100, 10, 50, 0};
  for (auto _ : state) benchmark::DoNotOptimize(bench::run_task(w, bench::corridor_task(), "corridor", opt));
}
BENCHMARK(BM_CorridorTask)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
