#include <benchmark/benchmark.h>

#include "fluidic/analog_sim.hpp"
#include "fluidic/flatten.hpp"
#include "fluidic/hexapod.hpp"
#include "fluidic/library.hpp"

using namespace fluidic;

static void BM_AnalogGate(benchmark::State& state) {
  Netlist nand3 = flatten({}, lib::kNand3, FlattenDepth::Valve);
  AnalogParams params;
  params.end_time = 1.0;
  Stimulus stim;
  stim.timescale = 1.0;
  stim.end_time = 1.0;
  stim.events = {{0, "a", LogicLevel::L1},
                 {0, "b", LogicLevel::L1},
                 {0, "c", LogicLevel::L1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_analog(nand3, stim, params));
  }
}
BENCHMARK(BM_AnalogGate)->Unit(benchmark::kMillisecond);

static void BM_AnalogController(benchmark::State& state) {
  // full valve-level controller, one 0.5 Hz clock period per iteration
  Netlist ctrl = build_controller(DemoMode::Structural, RoutingMode::Valved);
  Netlist flat = flatten(ctrl, ctrl.top, FlattenDepth::Valve);
  AnalogParams params;
  params.end_time = 2.0;
  Stimulus stim;
  stim.timescale = 1.0;
  stim.end_time = 2.0;
  stim.events = {{0.0, "x", LogicLevel::L1}};
  ClockDef clk;
  clk.net = "CLK";
  clk.period = 2.0;
  clk.duty = 0.125;
  clk.phase = 1.0;
  stim.clocks.push_back(clk);
  stim.inits = {{"Q", LogicLevel::L0},
                {"Qbar", LogicLevel::L1},
                {"u_ff/nS", LogicLevel::L1},
                {"u_ff/nR", LogicLevel::L1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_analog(flat, stim, params));
  }
}
BENCHMARK(BM_AnalogController)->Unit(benchmark::kMillisecond);
