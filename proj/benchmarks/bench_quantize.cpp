#include <benchmark/benchmark.h>

#include <qupid/quantize.hpp>
#include <qupid/rng.hpp>

namespace {

using namespace qupid;

std::vector<BPPoint> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BPPoint> points(n);
  for (auto& pt : points) {
    pt.b = rng.next_double();
    pt.p = rng.next_double();
  }
  return points;
}

void BM_QuantizeUniform(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto points = random_points(n, 42);
  const GridSpec grid = build_uniform_grid(points, 32, 32);
  for (auto _ : state) {
    const QuantizedMeasure m = quantize_points(points, grid);
    benchmark::DoNotOptimize(m.masses.data.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}

void BM_QuantizeLog(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto points = random_points(n, 43);
  const GridSpec grid = build_log_grid(points, 32, 32, {500.0, 500.0});
  for (auto _ : state) {
    const QuantizedMeasure m = quantize_points(points, grid);
    benchmark::DoNotOptimize(m.masses.data.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}

void BM_BuildLogGrid(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 44);
  for (auto _ : state) {
    const GridSpec grid = build_log_grid(points, 32, 32, {500.0, 500.0});
    benchmark::DoNotOptimize(grid.b_edges.data());
  }
}

}  // namespace

BENCHMARK(BM_QuantizeUniform)->Arg(100)->Arg(1000)->Arg(2000)->Arg(10000);
BENCHMARK(BM_QuantizeLog)->Arg(100)->Arg(1000)->Arg(2000)->Arg(10000);
BENCHMARK(BM_BuildLogGrid)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
