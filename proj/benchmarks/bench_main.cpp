#include <benchmark/benchmark.h>

#include "uavnoma/orchestrator.hpp"

using namespace uavnoma;

namespace {

Network reference_network(int num_devices) {
  ScenarioConfig c;
  c.num_devices = num_devices;
  return Network(c, generate_devices(c), plan_stop_points(c));
}

void BM_InitialMatching(benchmark::State& state) {
  const auto net = reference_network(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(initialize_matching(net));
}

void BM_Jdssa1(benchmark::State& state) {
  const auto net = reference_network(static_cast<int>(state.range(0)));
  const PowerAllocation p(net.num_devices(), net.config().p_max_w);
  int swaps = 0;
  for (auto _ : state) {
    auto r = jdssa1(net, p);
    swaps = r.swap_count;
    benchmark::DoNotOptimize(r);
  }
  state.counters["swaps"] = swaps;
}

void BM_Jdssa2(benchmark::State& state) {
  const auto net = reference_network(40);
  const PowerAllocation p(net.num_devices(), net.config().p_max_w);
  ExplorationOptions o;
  o.t_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jdssa2(net, p, o));
}

void BM_Dabpa(benchmark::State& state) {
  ScenarioConfig c;
  FractionalProblem p;
  for (int i = 0; i < state.range(0); ++i) p.gains.push_back(6e-9 / (1 + i));
  p.noise_power_w = c.noise_power_w;
  p.p_min_w = c.p_min_w;
  p.p_max_w = c.p_max_w;
  p.p_circuit_w = c.p_circuit_w;
  for (auto _ : state) benchmark::DoNotOptimize(dabpa(p));
}

void BM_Juddsra(benchmark::State& state) {
  ScenarioConfig c;
  c.num_devices = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(juddsra(c));
}

}  // namespace

BENCHMARK(BM_InitialMatching)->Arg(20)->Arg(60)->Arg(80);
BENCHMARK(BM_Jdssa1)->Arg(20)->Arg(50)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jdssa2)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dabpa)->DenseRange(1, 3);
BENCHMARK(BM_Juddsra)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
