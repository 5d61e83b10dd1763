#include <benchmark/benchmark.h>

#include <random>

#include "clogfuse/data/synthesize.hpp"
#include "clogfuse/fusion/enks.hpp"
#include "clogfuse/fusion/windows.hpp"
#include "clogfuse/prognostics/rul.hpp"
#include "clogfuse/sim/simulator.hpp"
#include "clogfuse/surrogate/multi_index.hpp"
#include "clogfuse/surrogate/vpce.hpp"

using namespace clogfuse;

static void BM_SimulateTrajectory(benchmark::State& state) {
  const auto grid = sim::default_grid();
  const auto schedule = sim::default_schedule();
  const auto x = sim::default_prior().mean();
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_trajectory(x, schedule, grid));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimulateTrajectory);

static void BM_RunEnsemble(benchmark::State& state) {
  const auto xs = sim::sample_prior(sim::default_prior(), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::run_ensemble(xs, sim::default_schedule(), sim::default_grid()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunEnsemble)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_FitVpce(benchmark::State& state) {
  const auto prior = sim::default_prior();
  const int degree = static_cast<int>(state.range(0));
  const auto n = 2 * surrogate::total_degree_size(prior.dim(), degree);
  const auto xs = sim::sample_prior(prior, n, 2);
  const auto ys = sim::run_ensemble(xs, sim::default_schedule(), sim::default_grid());
  for (auto _ : state) benchmark::DoNotOptimize(surrogate::fit_vpce(xs, ys, prior, degree));
  state.counters["design"] = static_cast<double>(n);
}
BENCHMARK(BM_FitVpce)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_PredictMany(benchmark::State& state) {
  const auto prior = sim::default_prior();
  const auto xd = sim::sample_prior(prior, 112, 3);
  const auto s = surrogate::fit_vpce(xd, sim::run_ensemble(xd, sim::default_schedule(), sim::default_grid()), prior, 3);
  const auto xs = sim::sample_prior(prior, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(surrogate::predict_many(s, xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PredictMany)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_EnksWindow(benchmark::State& state) {
  const auto grid = sim::default_grid();
  const auto schedule = sim::default_schedule();
  const auto xs = sim::sample_prior(sim::default_prior(), static_cast<std::size_t>(state.range(0)), 5);
  const auto ens = sim::run_ensemble(xs, schedule, grid);
  const auto truth = ens.member(0);
  const auto ds = data::synthesize_scenario(truth, {}, 6);
  const auto windows = fusion::windows_at_cleanings(schedule, grid);
  for (auto _ : state) benchmark::DoNotOptimize(fusion::enks_window(ens, windows[1], ds, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnksWindow)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_RulDistribution(benchmark::State& state) {
  const auto xs = sim::sample_prior(sim::default_prior(), static_cast<std::size_t>(state.range(0)), 8);
  const auto ens = sim::run_ensemble(xs, sim::default_schedule(), sim::default_grid());
  const prognostics::RulQuery q{0.2, 28.0, 40.0};
  for (auto _ : state) benchmark::DoNotOptimize(prognostics::rul_distribution(ens, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RulDistribution)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
