#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "frenet/curve.hpp"
#include "frenet/helix.hpp"
#include "frenet/numerics.hpp"
#include "frenet/pipeline.hpp"
#include "frenet/profile.hpp"

namespace {

using frenet::Vec;

void BM_Expm(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::vector<double> k(d - 1, 0.7);
  const frenet::Mat a = frenet::build_frenet_matrix(k).matrix() * 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(frenet::expm(a));
}
BENCHMARK(BM_Expm)->Arg(3)->Arg(4)->Arg(8);

void BM_AnalyzeClosed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = frenet::SampledCurve::closed_from(n, 3, [](double t) {
    return Vec{{(2.0 + std::cos(3.0 * t)) * std::cos(2.0 * t), (2.0 + std::cos(3.0 * t)) * std::sin(2.0 * t), std::sin(3.0 * t)}};
  });
  for (auto _ : state) benchmark::DoNotOptimize(frenet::analyze_curve(c));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_AnalyzeClosed)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SynthesizeR3(benchmark::State& state) {
  const auto s = frenet::CurvatureProfile::fourier({{{1.0}, {0.0, 0.5}}, {{0.5, 0.4}, {0.0, 0.0}}});
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(frenet::synthesize_curve(s, Vec::Zero(3), frenet::Frame::Identity(3, 3), 2.0 * std::numbers::pi, steps));
  }
}
BENCHMARK(BM_SynthesizeR3)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_ReturnSearch(benchmark::State& state) {
  const std::vector<double> k{1.0, 0.5, 0.3};
  const auto h = frenet::helix_from_constants(k, Vec::Zero(4), frenet::Frame::Identity(4, 4));
  for (auto _ : state) benchmark::DoNotOptimize(frenet::return_search(h, 0.05, 4, 2000.0));
}
BENCHMARK(BM_ReturnSearch)->Unit(benchmark::kMillisecond);

void BM_ApproximateR2(benchmark::State& state) {
  const auto s = frenet::CurvatureProfile::fourier({{{2.0}, {0.0, 1.0}}});
  for (auto _ : state) benchmark::DoNotOptimize(frenet::approximate_best_effort(s, 0.1));
}
BENCHMARK(BM_ApproximateR2)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
