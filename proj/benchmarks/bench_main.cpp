#include <benchmark/benchmark.h>

#include "ammkit/amm.hpp"
#include "ammkit/entanglement.hpp"
#include "ammkit/npa.hpp"
#include "ammkit/steering.hpp"

using namespace ammkit;

namespace {

Correlation chsh_isotropic(double v) {
  return born_correlation(isotropic_state(2, v), chsh_alice_settings(), chsh_bob_settings());
}

void BM_AmmTemplate(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_template(4, 2, level));
}
BENCHMARK(BM_AmmTemplate)->Arg(1)->Arg(2)->Arg(3);

void BM_BipartiteTemplate(benchmark::State& state) {
  const Scenario s = Scenario::bipartite(2, 2, 2, 2);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_bipartite_template(s, level));
}
BENCHMARK(BM_BipartiteTemplate)->Arg(1)->Arg(2)->Arg(3);

void BM_ErPpt(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ComplexMatrix rho = isotropic_state(d, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(er_ppt(rho, {d, d}));
}
BENCHMARK(BM_ErPpt)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SteeringRobustness(benchmark::State& state) {
  const Assemblage a = assemblage_from_state(maximally_entangled(2), chsh_alice_settings(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(steering_robustness(a));
}
BENCHMARK(BM_SteeringRobustness)->Unit(benchmark::kMillisecond);

void BM_SrDi(benchmark::State& state) {
  const Correlation p = chsh_isotropic(0.9);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sr_di(p, level));
}
BENCHMARK(BM_SrDi)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ErDiMblhg(benchmark::State& state) {
  const Correlation p = chsh_isotropic(0.9);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(er_di_mblhg(p, level));
}
BENCHMARK(BM_ErDiMblhg)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
