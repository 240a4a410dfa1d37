#pragma once

#include <string>

#include "fluidic/hexapod.hpp"
#include "fluidic/netlist.hpp"

namespace fluidic {

/// Netlist as pretty-printed JSON with stable key and element order.
std::string netlist_to_json(const Netlist& netlist);

std::string gait_report_to_json(const GaitReport& report);

} // namespace fluidic
