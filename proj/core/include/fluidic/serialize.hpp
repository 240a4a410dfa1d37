#pragma once

#include <string>

#include "fluidic/netlist.hpp"

namespace fluidic {

/// Canonical .fnl text: cells sorted by id, components sorted by name,
/// shortest round-trip float formatting, LF line endings. parse_fnl of the
/// result is structurally equal to the input netlist.
std::string serialize_fnl(const Netlist& netlist);

} // namespace fluidic
