#pragma once

#include <string>

#include "fluidic/netlist.hpp"

namespace fluidic {

/// DOT schematic: components as shaped nodes colored by layer tag, nets as
/// ellipse nodes with edges to the components touching them. ATM is treated
/// as an ambient vent and not drawn; VAC is. Deterministic ordering.
std::string write_dot(const Netlist& netlist);

} // namespace fluidic
