#include <benchmark/benchmark.h>

#include <qupid/fft.hpp>
#include <qupid/quantize.hpp>
#include <qupid/rng.hpp>
#include <qupid/transforms.hpp>

namespace {

using namespace qupid;

QuantizedMeasure random_measure(std::size_t r, std::size_t s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BPPoint> points(2000);
  for (auto& pt : points) {
    pt.b = rng.next_double();
    pt.p = rng.next_double();
  }
  const GridSpec grid = build_uniform_grid(points, r, s);
  return quantize_points(points, grid);
}

void BM_TransformIdentity(benchmark::State& state) {
  const auto m = random_measure(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    const FeatureVector f = transform_identity(m);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_TransformFourier(benchmark::State& state) {
  const auto m = random_measure(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    const FeatureVector f = transform_fourier(m);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_TransformWavelet(benchmark::State& state) {
  const auto m = random_measure(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(0)), 3);
  const TransformKind kind = TransformKind::coiflet(2);
  for (auto _ : state) {
    const FeatureVector f = transform_wavelet(m, kind);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_Fft1d(benchmark::State& state) {
  Rng rng(4);
  std::vector<Complex> signal(static_cast<std::size_t>(state.range(0)));
  for (auto& c : signal) c = {rng.next_double(), 0.0};
  for (auto _ : state) {
    std::vector<Complex> work = signal;
    fft(work, false);
    benchmark::DoNotOptimize(work.data());
  }
}

}  // namespace

BENCHMARK(BM_TransformIdentity)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK(BM_TransformFourier)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK(BM_TransformWavelet)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK(BM_Fft1d)->Arg(64)->Arg(1024)->Arg(4096)->Arg(1000)->Arg(4097);
