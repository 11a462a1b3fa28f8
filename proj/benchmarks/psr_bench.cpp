#include <benchmark/benchmark.h>

#include "psr/bregman.hpp"
#include "psr/hyvarinen.hpp"
#include "psr/sampling.hpp"
#include "psr/scoring_rules.hpp"

using namespace psr;

namespace {

void BM_Pair(benchmark::State& state) {
  const auto mu = MeasureSpace::uniform(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  const ConeVector q = sample_cone_point(rng, mu);
  const DualVector s = as_dual(sample_cone_point(rng, mu));
  for (auto _ : state) benchmark::DoNotOptimize(pair(q, s));
}
BENCHMARK(BM_Pair)->Arg(20)->Arg(1000)->Arg(100000);

void BM_Score(benchmark::State& state, const char* name) {
  const ScoringRule rule = make_psr(parse_entropy(name));
  const auto mu = MeasureSpace::uniform(static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  const Density q = sample_density(rng, mu);
  for (auto _ : state) benchmark::DoNotOptimize(rule(q));
}
BENCHMARK_CAPTURE(BM_Score, quadratic, "quadratic")->Arg(20)->Arg(1000);
BENCHMARK_CAPTURE(BM_Score, shannon, "shannon")->Arg(20)->Arg(1000);
BENCHMARK_CAPTURE(BM_Score, pseudospherical, "pseudospherical(3)")->Arg(20)->Arg(1000);

void BM_VerifyPropriety(benchmark::State& state) {
  const ScoringRule rule = make_psr(parse_entropy("power(1.5)"));
  const auto mu = MeasureSpace::uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_propriety(rule, mu, 42, 1000, 1e-10));
}
BENCHMARK(BM_VerifyPropriety)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SymmetryDefect(benchmark::State& state) {
  const Entropy e = parse_entropy("power(3)");
  const auto mu = MeasureSpace::uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmetry_defect(e, mu, 42, 200));
}
BENCHMARK(BM_SymmetryDefect)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HyvarinenScore(benchmark::State& state) {
  const PeriodicGrid grid(static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  std::vector<double> v(grid.size());
  for (double& x : v) x = rng.log_uniform(0.2, 5.0);
  const GridDensity q(grid, std::move(v));
  for (auto _ : state) benchmark::DoNotOptimize(hyvarinen_score(q));
}
BENCHMARK(BM_HyvarinenScore)->Arg(64)->Arg(4096);

}  // namespace
BENCHMARK_MAIN();
