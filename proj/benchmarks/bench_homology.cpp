#include <benchmark/benchmark.h>

#include <qupid/datasets.hpp>
#include <qupid/homology.hpp>

namespace {

using namespace qupid;

PointCloud orbit_cloud(std::size_t n_points) {
  return generate_orbit({4.1, n_points, 9});
}

void BM_RipsH0(benchmark::State& state) {
  const PointCloud cloud = orbit_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const PersistenceDiagram d = rips_h0(cloud);
    benchmark::DoNotOptimize(d.points.data());
  }
}

void BM_RipsH1(benchmark::State& state) {
  const PointCloud cloud = orbit_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const PersistenceDiagram d = rips_h1(cloud, 0.4);
    benchmark::DoNotOptimize(d.points.data());
  }
}

void BM_Hks(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g{n, {}};
  for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  for (std::size_t i = 0; i + 2 < n; i += 3) g.edges.push_back({i, i + 2});
  for (auto _ : state) {
    const VertexFunction h = hks(g, 1.0);
    benchmark::DoNotOptimize(h.data());
  }
}

}  // namespace

BENCHMARK(BM_RipsH0)->Arg(100)->Arg(300);
BENCHMARK(BM_RipsH1)->Arg(100)->Arg(200)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hks)->Arg(10)->Arg(30);
