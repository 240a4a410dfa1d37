#pragma once

#include <span>
#include <string>

#include "fluidic/analog_sim.hpp"
#include "fluidic/trace.hpp"

namespace fluidic {

/// Value-change-dump text for the named logic nets. Identifiers are assigned
/// sequentially from '!'; no $date and a fixed $version keep the output
/// byte-identical across runs. Empty `vars` selects every net in the trace.
std::string write_vcd(const Trace& trace, std::string_view timescale = "1ns",
                      std::span<const std::string> vars = {});

/// Analog dump: one real variable per net (pressure in Pa) plus a
/// thresholded 1-bit wire per net (suffix "_bit"). Timescale is 100us.
std::string write_vcd_analog(const AnalogTrace& analog, const Trace& thresholded,
                             std::span<const std::string> vars = {});

/// Sample-per-row CSV: time in seconds then one pressure column per net.
std::string write_csv(const AnalogTrace& trace);

} // namespace fluidic
