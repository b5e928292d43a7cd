#include <benchmark/benchmark.h>

#include "scambait/simulation.hpp"

using namespace scambait;

namespace {

void BM_Simulation(benchmark::State& state) {
  CampaignConfig c;
  c.seed = 3;
  c.simulation.population = static_cast<int>(state.range(0));
  for (auto _ : state) {
    EventLog log;
    benchmark::DoNotOptimize(run_simulation(c, log));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulation)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ComputeReport(benchmark::State& state) {
  CampaignConfig c;
  c.seed = 3;
  c.simulation.population = 200;
  EventLog log;
  run_simulation(c, log);
  for (auto _ : state) benchmark::DoNotOptimize(compute_report(log.events()));
}
BENCHMARK(BM_ComputeReport)->Unit(benchmark::kMillisecond);

}  // namespace
