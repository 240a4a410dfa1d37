#pragma once

#include <string_view>

#include "fluidic/netlist.hpp"

namespace fluidic {

enum class FlattenDepth {
  /// Expand hierarchy but keep NOT/NAND gates and behavioral flip-flops as
  /// atomic instances.
  Gate,
  /// Expand everything to valves/restrictions; behavioral cells are rejected.
  Valve,
};

/// Elaborates `top` into a single non-hierarchical cell. Internal nets are
/// prefixed with the instance path ("u1/nS"); rails and the top cell's own
/// nets keep their names; the external port list is preserved in order.
/// Throws Error{InvalidNetlist} if validate() is not clean, UnknownCell, or
/// BehavioralAtValveLevel.
Netlist flatten(const Netlist& netlist, std::string_view top, FlattenDepth depth);

/// Number of Valve components. Throws Error{NotFlattened} if any cell
/// instance is still present.
int valve_count(const Netlist& netlist);

/// Number of Restriction components, same precondition as valve_count.
int restriction_count(const Netlist& netlist);

/// Top cell to operate on when none was named: the explicit `top`, else the
/// implicit "main" cell, else the single defined cell. Throws
/// Error{InvalidArgument} when ambiguous.
std::string default_top(const Netlist& netlist);

} // namespace fluidic
