#include <benchmark/benchmark.h>

#include "fluidic/flatten.hpp"
#include "fluidic/hexapod.hpp"
#include "fluidic/library.hpp"
#include "fluidic/logic_sim.hpp"

using namespace fluidic;

static void BM_StructuralTff(benchmark::State& state) {
  Netlist tff = flatten({}, lib::kTffStruct, FlattenDepth::Gate);
  Stimulus stim;
  stim.inits = {{"Q", LogicLevel::L0},
                {"Qbar", LogicLevel::L1},
                {"nS", LogicLevel::L1},
                {"nR", LogicLevel::L1}};
  stim.events = {{0, "T", LogicLevel::L1}};
  ClockDef clk;
  clk.net = "CLK";
  clk.period = 10;
  clk.duty = 0.3;
  clk.phase = 5;
  stim.clocks.push_back(clk);
  const int64_t until = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(tff, stim, until));
  }
}
BENCHMARK(BM_StructuralTff)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_BehavioralDemo(benchmark::State& state) {
  DemoConfig config;
  config.cycles = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_demo(config));
  }
}
BENCHMARK(BM_BehavioralDemo)->Arg(4)->Arg(64)->Unit(benchmark::kMicrosecond);
