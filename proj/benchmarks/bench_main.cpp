#include <benchmark/benchmark.h>

#include "lensworks/ca.hpp"
#include "lensworks/fractal.hpp"
#include "lensworks/render.hpp"

using namespace lensworks;

static void BM_MargolusStep(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ca::Grid g = ca::Grid::random(n, n, 0.3, 7);
  ca::ChoiceStream stream(7);
  for (auto _ : state) {
    g = ca::margolus_step(g, ca::RuleKind::Diffusion, stream);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * n);
}
BENCHMARK(BM_MargolusStep)->Arg(64)->Arg(256)->Arg(1024);

static void BM_AthenaCurve(benchmark::State& state) {
  Circle seed{0, {0, 0}, 1.0, M_PI / 2.0, 0, Packing::None};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fractal::athena_curve(seed, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_AthenaCurve)->Arg(6)->Arg(9)->Arg(12);

static void BM_OverlapReport(benchmark::State& state) {
  Circle seed{0, {0, 0}, 1.0, M_PI / 2.0, 0, Packing::None};
  auto circles = fractal::athena_curve(seed, static_cast<int>(state.range(0))).circles;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fractal::overlap_report(circles, 1e-9));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circles.size()));
}
BENCHMARK(BM_OverlapReport)->Arg(7)->Arg(9);

static void BM_SvgString(benchmark::State& state) {
  Circle seed{0, {0, 0}, 1.0, M_PI / 2.0, 0, Packing::None};
  auto circles = fractal::athena_curve(seed, 8).circles;
  auto scene = render::scene_from_circles(circles);
  for (auto _ : state) {
    benchmark::DoNotOptimize(render::svg_string(scene));
  }
}
BENCHMARK(BM_SvgString);
