#include <benchmark/benchmark.h>

#include "vrs/complex.hpp"
#include "vrs/conic.hpp"
#include "vrs/covering.hpp"
#include "vrs/homology.hpp"

namespace {

using namespace vrs;

FinitePointCloud s2_cloud(std::size_t n) { return sample_space(Ambient::sphere(2), n, SampleStrategy::uniform_random, 7); }

void BM_BuildVR(benchmark::State& state) {
  const auto cloud = s2_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_vr(cloud, 1.2, 3));
}
BENCHMARK(BM_BuildVR)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_Betti(benchmark::State& state) {
  const auto cx = build_vr(s2_cloud(static_cast<std::size_t>(state.range(0))), 1.2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(betti(cx));
  state.counters["simplices"] = static_cast<double>(cx.total_simplices());
}
BENCHMARK(BM_Betti)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_CircleBetti(benchmark::State& state) {
  const auto cloud = sample_space(Ambient::sphere(1), static_cast<std::size_t>(state.range(0)),
                                  SampleStrategy::evenly_spaced_circle);
  const auto cx = build_vr(cloud, 2 * kPi * 0.37, 4);
  for (auto _ : state) benchmark::DoNotOptimize(betti(cx));
}
BENCHMARK(BM_CircleBetti)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ConicCheck(benchmark::State& state) {
  const auto cloud = sample_space(Ambient::sphere(1), static_cast<std::size_t>(state.range(0)),
                                  SampleStrategy::uniform_random, 3);
  for (auto _ : state) benchmark::DoNotOptimize(conic_check(cloud, 0.8 * kPi, 1));
}
BENCHMARK(BM_ConicCheck)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_ExactCoveringRadius(benchmark::State& state) {
  const auto centers = sample_space(Ambient::sphere(2), static_cast<std::size_t>(state.range(0)),
                                    SampleStrategy::uniform_random, 5);
  const std::vector<SpherePoint> pts(centers.points().begin(), centers.points().end());
  for (auto _ : state) benchmark::DoNotOptimize(exact_covering_radius(Ambient::sphere(2), pts));
}
BENCHMARK(BM_ExactCoveringRadius)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_SolveCov(benchmark::State& state) {
  CoverConfig cfg;
  cfg.multistarts = 2;
  cfg.anneal_rounds = 10;
  for (auto _ : state) benchmark::DoNotOptimize(solve_cov(Ambient::sphere(2), static_cast<int>(state.range(0)), cfg));
}
BENCHMARK(BM_SolveCov)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
