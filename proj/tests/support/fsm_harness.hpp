#pragma once

// Drives a synthesized gate-level circuit with a clocked testbench and
// compares every sampled output and state bit against interpret_fsm.

#include <string>
#include <vector>

#include "fluidic/fsm.hpp"
#include "fluidic/logic_sim.hpp"
#include "fluidic/netlist.hpp"
#include "fluidic/stimulus.hpp"

namespace testutil {

struct HarnessRun {
  int steps = 20;
  std::vector<std::vector<bool>> inputs; // empty: all-low rows
};

/// Empty string when the circuit tracks the interpreter exactly; otherwise a
/// description of the first mismatch. One interpreter step per rising clock
/// edge: inputs settle before the edge, Mealy outputs are sampled just before
/// it, Moore outputs and state bits after it.
inline std::string circuit_vs_interpreter(const fluidic::FsmSpec& spec,
                                          const fluidic::Netlist& flat,
                                          HarnessRun run) {
  using namespace fluidic;

  auto inputs = run.inputs;
  if (inputs.empty())
    inputs.assign(run.steps, std::vector<bool>(spec.inputs.size(), false));
  const int steps = static_cast<int>(inputs.size());
  const int64_t period = 16;

  Stimulus stim;
  const int bits = state_bit_count(spec);
  for (int b = 0; b < bits; ++b) {
    stim.inits.push_back({"Q" + std::to_string(b), LogicLevel::L0});
    stim.inits.push_back({"Qbar" + std::to_string(b), LogicLevel::L1});
  }
  if (bits > 0) {
    ClockDef clk;
    clk.net = "CLK";
    clk.period = static_cast<double>(period);
    clk.duty = 0.5;
    clk.phase = static_cast<double>(period / 2); // rising edges at 8+16k
    stim.clocks.push_back(clk);
  }
  for (int k = 0; k < steps; ++k) {
    for (size_t i = 0; i < spec.inputs.size(); ++i) {
      stim.events.push_back({static_cast<double>(k * period + 2),
                             spec.inputs[i],
                             inputs[k][i] ? LogicLevel::L1 : LogicLevel::L0});
    }
  }

  Trace trace = simulate(flat, stim, steps * period + period);
  FsmRun oracle = interpret_fsm(spec, inputs);
  auto encoding = encode_states(spec);

  auto to_level = [](bool b) { return b ? LogicLevel::L1 : LogicLevel::L0; };

  for (int k = 0; k < steps; ++k) {
    const int64_t mealy_at = k * period + 7;  // settled, pre-edge
    const int64_t moore_at = k * period + 15; // settled, post-edge
    for (const auto& [name, value] : oracle.steps[k].outputs) {
      bool mealy = spec.is_mealy_output(name);
      LogicLevel got = trace.level_at(name, mealy ? mealy_at : moore_at);
      if (got != to_level(value)) {
        return "step " + std::to_string(k) + ": output " + name + " is " +
               std::string(1, level_char(got)) + ", interpreter says " +
               (value ? "1" : "0");
      }
    }
    uint32_t code = encoding[oracle.steps[k].state_after];
    for (int b = 0; b < bits; ++b) {
      LogicLevel got = trace.level_at("Q" + std::to_string(b), moore_at);
      if (got != to_level(((code >> b) & 1u) != 0)) {
        return "step " + std::to_string(k) + ": state bit Q" +
               std::to_string(b) + " diverged from code " + std::to_string(code);
      }
    }
  }
  return {};
}

} // namespace testutil
