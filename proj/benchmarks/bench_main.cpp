#include <benchmark/benchmark.h>

#include "coxinv/davis.hpp"
#include "coxinv/enumeration.hpp"
#include "coxinv/graph_product_building.hpp"
#include "coxinv/growth.hpp"

using namespace coxinv;

static void BM_BallEnumerationPentagon(benchmark::State& state) {
  const ReflectionRepresentation rep(systems::right_angled_polygon(5));
  EnumerationLimits limits;
  limits.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(ball_enumerate(rep, static_cast<int>(state.range(0)), limits));
}
BENCHMARK(BM_BallEnumerationPentagon)->Args({8, 0})->Args({10, 0})->Args({10, 1})->Unit(benchmark::kMillisecond);

static void BM_BallEnumerationTriangle237(benchmark::State& state) {
  const ReflectionRepresentation rep(systems::triangle(2, 3, 7));
  for (auto _ : state) benchmark::DoNotOptimize(ball_enumerate(rep, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BallEnumerationTriangle237)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_TransferCounts(benchmark::State& state) {
  const auto M = systems::right_angled_polygon(5);
  for (auto _ : state) benchmark::DoNotOptimize(right_angled_sphere_counts(M, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TransferCounts)->Arg(20)->Arg(40);

static void BM_GrowthSeries(benchmark::State& state) {
  const auto M = systems::triangle(3, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(rational_growth_series(M, false));
}
BENCHMARK(BM_GrowthSeries)->Unit(benchmark::kMillisecond);

static void BM_SeriesRate(benchmark::State& state) {
  const auto M = systems::right_angled_polygon(5);
  const auto series = rational_growth_series(M, false);
  const std::vector<double> one{1.0};
  for (auto _ : state) benchmark::DoNotOptimize(series_growth_rate(series, one));
}
BENCHMARK(BM_SeriesRate)->Unit(benchmark::kMillisecond);

static void BM_Vcd(benchmark::State& state) {
  const auto M = systems::right_angled_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vcd_real(M));
}
BENCHMARK(BM_Vcd)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_GraphProductBuilding(benchmark::State& state) {
  const auto M = systems::right_angled_polygon(5);
  const RegularBuildingSpec spec(M, ThicknessVector::uniform(M, 2));
  for (auto _ : state) benchmark::DoNotOptimize(build_graph_product(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GraphProductBuilding)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_OracleBattery(benchmark::State& state) {
  const auto M = systems::right_angled_polygon(5);
  const auto B = build_graph_product(RegularBuildingSpec(M, ThicknessVector::uniform(M, 2)), 4);
  OracleOptions opts;
  opts.trials = 100;
  for (auto _ : state) benchmark::DoNotOptimize(verify_oracle(B, opts));
}
BENCHMARK(BM_OracleBattery)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
