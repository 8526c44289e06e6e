#include <benchmark/benchmark.h>

#include "morsecs/morse_model.hpp"
#include "morsecs/observables.hpp"
#include "morsecs/quadrature.hpp"
#include "morsecs/specfun.hpp"
#include "morsecs/states.hpp"

namespace {

const morsecs::ModelParams& hcl() {
  static const auto params = morsecs::ModelParams::from_nu(57.44);
  return params;
}

const morsecs::ModelParams& cs2() {
  static const auto params = morsecs::ModelParams::from_nu(524.55);
  return params;
}

void BM_LogGamma(benchmark::State& state) {
  double x = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(morsecs::log_gamma(x));
    x += 1.3;
    if (x > 900.0) x -= 899.0;
  }
}
BENCHMARK(BM_LogGamma);

void BM_LaguerreScaled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(morsecs::assoc_laguerre_scaled(n, 12.4, 35.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LaguerreScaled)->Range(8, 512)->Complexity(benchmark::oN);

void BM_GaussRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(morsecs::gauss_laguerre_rule(order, 53.44));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussRule)->Arg(100)->Arg(200)->Arg(400)->Complexity(benchmark::oNSquared);

void BM_BuildStateHCl(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        morsecs::build_state(hcl(), morsecs::LadderVariant::EnergyLike, {2.0, 0.0}, {0.3, 0.0}));
}
BENCHMARK(BM_BuildStateHCl);

void BM_BuildStateCs2(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        morsecs::build_state(cs2(), morsecs::LadderVariant::EnergyLike, {2.0, 0.0}, {0.3, 0.0}));
}
BENCHMARK(BM_BuildStateCs2);

void BM_AnalyticTablesHCl(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(morsecs::build_table(hcl(), morsecs::Observable::X));
    benchmark::DoNotOptimize(morsecs::build_table(hcl(), morsecs::Observable::P2));
  }
}
BENCHMARK(BM_AnalyticTablesHCl);

void BM_X2TableHCl(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(morsecs::build_table(hcl(), morsecs::Observable::X2));
}
BENCHMARK(BM_X2TableHCl)->Unit(benchmark::kSecond);

void BM_TrajectoryPointHCl(benchmark::State& state) {
  static const morsecs::ObservableTables tables = morsecs::build_tables(hcl());
  static const morsecs::SqueezedState st =
      morsecs::build_state(hcl(), morsecs::LadderVariant::EnergyLike, {2.0, 0.0}, {0.0, 0.0});
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(morsecs::dispersions(st, tables, t));
    t += 0.01;
  }
}
BENCHMARK(BM_TrajectoryPointHCl);

}  // namespace

BENCHMARK_MAIN();
