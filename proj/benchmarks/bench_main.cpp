#include <random>

#include <benchmark/benchmark.h>

#include "hdrstitch/enhance.hpp"
#include "hdrstitch/mef.hpp"
#include "hdrstitch/pipeline.hpp"
#include "hdrstitch/pyramid.hpp"
#include "hdrstitch/synthetic.hpp"
#include "hdrstitch/wha.hpp"

namespace {

using namespace hdrstitch;

const SyntheticScene& scene() {
  static const SyntheticScene s = synthesize_test_scene(1, PanoLayout(640, 480, 200, 200));
  return s;
}

void BM_BuildImf(benchmark::State& state) {
  const wha::Histogram256 hi = wha::histogram(scene().truth[0], 1);
  const wha::Histogram256 hj = wha::histogram(scene().truth[1], 1);
  for (auto _ : state) benchmark::DoNotOptimize(wha::build_imf(hi, hj));
}
BENCHMARK(BM_BuildImf);

void BM_EstimateAllImfs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_all_imfs(scene().viewset));
}
BENCHMARK(BM_EstimateAllImfs)->Unit(benchmark::kMillisecond);

void BM_LaplacianRoundTrip(benchmark::State& state) {
  const FloatImage img = to_float(scene().truth[1]);
  const int depth = mef::default_pyramid_depth(img.width(), img.height());
  for (auto _ : state) benchmark::DoNotOptimize(mef::collapse(mef::laplacian_pyramid(img, depth)));
}
BENCHMARK(BM_LaplacianRoundTrip)->Unit(benchmark::kMillisecond);

void BM_Fuse(benchmark::State& state) {
  const std::array<FloatImage, 3> panos{to_float(scene().truth[0]), to_float(scene().truth[1]),
                                        to_float(scene().truth[2])};
  const int depth = mef::default_pyramid_depth(panos[0].width(), panos[0].height());
  for (auto _ : state) benchmark::DoNotOptimize(mef::fuse(panos, depth));
}
BENCHMARK(BM_Fuse)->Unit(benchmark::kMillisecond);

void BM_SolveDetail(benchmark::State& state) {
  const SyntheticScene& s = scene();
  const enhance::GuidanceField field = enhance::guidance_field(
      {enhance::log_domain(to_float(s.truth[0])), enhance::log_domain(to_float(s.truth[1])),
       enhance::log_domain(to_float(s.truth[2]))},
      s.viewset.layout);
  const enhance::SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(enhance::solve_detail(field, cfg));
}
BENCHMARK(BM_SolveDetail)->Unit(benchmark::kMillisecond);

void BM_Stitch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stitch(scene().viewset, StitchConfig{}));
}
BENCHMARK(BM_Stitch)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
BENCHMARK_MAIN();
