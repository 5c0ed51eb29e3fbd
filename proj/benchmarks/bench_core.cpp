#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "ptk/equilibrium.hpp"
#include "ptk/extremal.hpp"
#include "ptk/interval_set.hpp"
#include "ptk/schur.hpp"

namespace {

void BM_EquilibriumCantor(benchmark::State& state) {
  const ptk::IntervalSet k = ptk::cantor_set(static_cast<int>(state.range(0)), 1.0 / 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(ptk::solve_equilibrium(k).cap());
  state.counters["intervals"] = static_cast<double>(k.size());
}
BENCHMARK(BM_EquilibriumCantor)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_OmegaOuterApprox(benchmark::State& state) {
  const ptk::IntervalSet k = ptk::cantor_set(6, 1.0 / 3.0);
  const ptk::EndpointContext ctx = ptk::check_interval_condition(k, 1.0);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ptk::omega_factor(ptk::solve_equilibrium(ptk::outer_approx(k, ctx, m)), 1.0));
}
BENCHMARK(BM_OmegaOuterApprox)->RangeMultiplier(2)->Range(2, 64)->Unit(benchmark::kMillisecond);

void BM_MarkovTwoIntervals(benchmark::State& state) {
  const std::vector<std::pair<double, double>> raw{{-1.0, -0.5}, {0.5, 1.0}};
  const ptk::IntervalSet k = ptk::IntervalSet::normalize(raw);
  const ptk::EquilibriumData e = ptk::solve_equilibrium(k);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ptk::markov_extremal(e, 1.0, n).value);
}
BENCHMARK(BM_MarkovTwoIntervals)->Arg(10)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SchurWitnessAudit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ptk::InverseImageMap map = ptk::quadratic_inverse_image(0.5);
  const ptk::SchurWitness w = ptk::build_witness(map, 1.0, n);
  const ptk::EquilibriumData e = ptk::solve_equilibrium(map.target());
  const ptk::EndpointContext ctx = ptk::check_interval_condition(map.target(), map.a());
  const ptk::RealFunction h = [](double) { return 1.0; };
  const ptk::RealFunction p = [&w](double x) { return w(x); };
  for (auto _ : state) benchmark::DoNotOptimize(ptk::audit_bound(p, h, map.target(), ctx, n, e).norm_ratio);
}
BENCHMARK(BM_SchurWitnessAudit)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
