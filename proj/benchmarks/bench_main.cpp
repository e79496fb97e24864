// Microbenchmarks for the hot paths: the group-cost kernel, dominance
// filtering, the exact search at several shapes, the biobjective routine,
// hypervolume, and model build plus export. Instances are seeded per shape
// so numbers are comparable across runs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "domove/biobjective.hpp"
#include "domove/geometry.hpp"
#include "domove/indicators.hpp"
#include "domove/lp_format.hpp"
#include "domove/mip_model.hpp"
#include "domove/solver.hpp"

namespace {

using domove::Point;
using domove::PointSet;

PointSet make_set(const char* label, std::size_t n, std::size_t m,
                  unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::vector<Point> pts(n, Point(m));
  for (Point& p : pts) {
    for (double& v : p) v = coord(rng);
  }
  return PointSet(label, m, std::move(pts));
}

void bm_group_cost(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const PointSet p = make_set("P", 1, m, 1);
  const PointSet q = make_set("Q", 16, m, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(domove::group_cost(p[0], q.points()));
  }
}
BENCHMARK(bm_group_cost)->Arg(2)->Arg(10)->Arg(30);

void bm_pareto_filter(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PointSet s = make_set("S", n, 5, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(domove::pareto_filter(s));
  }
}
BENCHMARK(bm_pareto_filter)->Arg(64)->Arg(512)->Arg(4096);

void bm_solve_bb(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = static_cast<std::size_t>(state.range(1));
  const PointSet p = make_set("P", n, m, 4);
  const PointSet q = make_set("Q", n, m, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(domove::solve_bb(p, q));
  }
}
BENCHMARK(bm_solve_bb)
    ->Args({5, 3})
    ->Args({10, 5})
    ->Args({20, 10})
    ->Unit(benchmark::kMicrosecond);

void bm_biobjective(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PointSet p = make_set("P", n, 2, 6);
  const PointSet q = make_set("Q", n, 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(domove::dom_biobjective(p, q));
  }
}
BENCHMARK(bm_biobjective)->Arg(16)->Arg(64)->Arg(256)
    ->Unit(benchmark::kMicrosecond);

void bm_hypervolume(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = static_cast<std::size_t>(state.range(1));
  const PointSet s = make_set("S", n, m, 8);
  const Point ref(m, 11.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(domove::hypervolume(s, ref));
  }
}
BENCHMARK(bm_hypervolume)
    ->Args({32, 3})
    ->Args({64, 4})
    ->Args({128, 5})
    ->Unit(benchmark::kMicrosecond);

void bm_model_export(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PointSet p = make_set("P", n, 5, 9);
  const PointSet q = make_set("Q", n, 5, 10);
  for (auto _ : state) {
    const domove::MipModel model = domove::build_model(p, q, false);
    benchmark::DoNotOptimize(domove::export_lp(model));
  }
}
BENCHMARK(bm_model_export)->Arg(5)->Arg(15)->Arg(30)
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
