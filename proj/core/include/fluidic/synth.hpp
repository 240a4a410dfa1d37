#pragma once

#include <string>
#include <vector>

#include "fluidic/fsm.hpp"
#include "fluidic/minimize.hpp"
#include "fluidic/netlist.hpp"

namespace fluidic {

struct SynthOptions {
  /// Emit TFF_BEHAV state bits instead of the 10-valve TFF_STRUCT.
  bool behavioral_ffs = false;
  EdgeMode ff_edge = EdgeMode::Rising;
  /// Realize output-routing ORs as lossless routing-layer junctions excluded
  /// from the switch count instead of NAND(NOT a, NOT b) logic.
  bool ideal_routing = false;
  int max_fan_in = 3;
};

/// T excitation per state bit: T_i(state bits, inputs) = Q_i xor Q_i',
/// built by exhaustive replay of the transition function. Table variables
/// are [Q0..Qk-1, inputs...] in that order; unreachable codes are dontcare.
std::vector<TruthTable> derive_t_excitation(const FsmSpec& spec,
                                            const std::vector<uint32_t>& encoding);

/// Truth table of a declared output over the same variable space.
TruthTable derive_output_table(const FsmSpec& spec,
                               const std::vector<uint32_t>& encoding,
                               std::string_view output);

/// Maps minimized covers onto the fluidic cell library: term NANDs feeding an
/// output NAND, single-literal covers as wires/NOTs, state bits as T
/// flip-flops clocked by CLK. Covers arrive in [T0..Tk-1, outputs...] order.
/// Throws Error{NandFanInExceeded} when a NAND would need more than
/// max_fan_in inputs.
Netlist map_to_gates(const FsmSpec& spec, const std::vector<uint32_t>& encoding,
                     const std::vector<CoverExpr>& t_covers,
                     const std::vector<CoverExpr>& output_covers,
                     const SynthOptions& options = {});

/// encode_states + derive_t_excitation + minimize + map_to_gates.
Netlist synthesize(const FsmSpec& spec, const SynthOptions& options = {});

} // namespace fluidic
