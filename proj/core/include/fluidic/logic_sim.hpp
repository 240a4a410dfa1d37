#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "fluidic/netlist.hpp"
#include "fluidic/stimulus.hpp"
#include "fluidic/trace.hpp"

namespace fluidic {

/// Inertial delay per driver kind, in integer simulation units.
struct GateDelays {
  int inverter = 1;
  int nand = 1;
  int flipflop = 1;
  int junction = 0;
};

struct SimOptions {
  GateDelays delays;
  /// Changes applied to one net at a single timestamp before the run is
  /// declared a zero-delay oscillation.
  int oscillation_limit = 1000;
};

/// Combinational gate evaluation. `kind` is NOT, NAND_2 or NAND_3; NAND is
/// 0-dominant. Throws Error{ArityMismatch}.
LogicLevel eval_gate(std::string_view kind, std::span<const LogicLevel> inputs);

enum class FfKind { T, JK };
enum class ClockEdge { Rising, Falling };

bool edge_selected(EdgeMode mode, ClockEdge edge);

/// Behavioral flip-flop state update at a selected clock edge. For FfKind::T
/// inputs = {T}; for FfKind::JK inputs = {J, K}. Qbar is always the negation
/// of the returned Q.
LogicLevel update_ff(FfKind kind, EdgeMode mode, ClockEdge edge,
                     std::span<const LogicLevel> inputs, LogicLevel q);

/// Deterministic event-driven three-valued simulation of a gate-level
/// netlist. All nets start at LX except rails, stimulus-driven nets and nets
/// forced by init directives; an init on a behavioral flip-flop's Q output
/// also seeds its internal state. Inertial delays: a pending change is
/// cancelled when the driver re-evaluates to a different value before it
/// applies. At equal timestamps stimulus events apply before driver events.
/// Terminates at `until` or quiescence; throws Error{OscillationAtInstant}
/// on zero-delay cycles.
Trace simulate(const Netlist& gate_level, const Stimulus& stimulus,
               int64_t until, const SimOptions& options = {});

} // namespace fluidic
