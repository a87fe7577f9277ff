#include <benchmark/benchmark.h>

#include <random>

#include "qcorr/channels.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/random.hpp"
#include "qcorr/sweep.hpp"

using namespace qcorr;

static void BM_Evolve(benchmark::State& state) {
  const auto bell = make_bell_state(3);
  const auto family = kNoiseFamilies[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(bell, family, family, 0.5, 0.5, 1.0));
  }
  state.SetLabel(std::string(to_string(family)));
}
BENCHMARK(BM_Evolve)->DenseRange(0, 3);

static void BM_Negativity(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto rho = random_density_matrix({3, 3}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho));
}
BENCHMARK(BM_Negativity);

static void BM_GdLowerBound(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto rho = random_density_matrix({3, 3}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gd_lower_bound(rho));
}
BENCHMARK(BM_GdLowerBound);

static void BM_GdExact(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto rho = random_density_matrix({3, 3}, rng);
  const int restarts = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::gd_exact(rho, restarts, 0).value);
}
BENCHMARK(BM_GdExact)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_RateGrid(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.family_a = ChannelFamily::TritPhaseFlip;
  cfg.family_b = ChannelFamily::Depolarizing;
  cfg.rate_a = cfg.rate_b = Range::linspace(0.0, 2.0, 50);
  cfg.time = Range::fixed(1.0);
  cfg.mode = SweepMode::RateGrid;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg).rows());
}
BENCHMARK(BM_RateGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
