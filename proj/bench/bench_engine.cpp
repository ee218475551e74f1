// Serial reference vs OpenMP driver on the same scenario.

#include <benchmark/benchmark.h>

#include "cgsim/engine.hpp"

namespace {

cgsim::Scenario bench_scenario(std::int64_t packets) {
  cgsim::Scenario s;
  s.config.period_slots = 10;
  s.config.to_offsets = cgsim::generate_offsets(6, 0, 0);
  s.config.rep_count = 4;
  s.config.scheme = cgsim::FlexibleOffset{};
  s.traffic = cgsim::UniformOverSlots{0, 9};
  s.channel.epsilon = 0.1;
  s.packets = packets;
  cgsim::resolve_shared_collision(s);
  return s;
}

void BM_RunSerial(benchmark::State& state) {
  const auto s = bench_scenario(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cgsim::run_serial(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunParallel(benchmark::State& state) {
  const auto s = bench_scenario(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(cgsim::run(s, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RunSerial)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunParallel)
    ->ArgsProduct({{100000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
