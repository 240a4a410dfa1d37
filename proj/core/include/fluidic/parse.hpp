#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fluidic/analog_params.hpp"
#include "fluidic/diag.hpp"
#include "fluidic/fsm.hpp"
#include "fluidic/netlist.hpp"
#include "fluidic/stimulus.hpp"

namespace fluidic {

/// Parse outcome: a value plus diagnostics. `value` is absent whenever an
/// error-severity diagnostic was produced. Parsers are total: any input text
/// yields a result, never a crash.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diags;
  bool ok() const { return value.has_value() && !has_errors(diags); }
};

/// Netlist language (.fnl). On success the netlist has already passed
/// validate(); semantic diagnostics carry source spans.
Parsed<Netlist> parse_fnl(std::string_view text,
                          std::string_view filename = "<input>");

/// FSM language (.fsm). Determinism and completeness are verified by
/// exhaustive guard evaluation over all input combinations.
Parsed<FsmSpec> parse_fsm(std::string_view text,
                          std::string_view filename = "<input>");

/// Stimulus language (.stim). Clocks stay symbolic; event times must be
/// non-decreasing.
Parsed<Stimulus> parse_stim(std::string_view text,
                            std::string_view filename = "<input>");

/// key=value analog parameter file, applied over the defaults.
Parsed<AnalogParams> parse_params(std::string_view text,
                                  std::string_view filename = "<input>");

} // namespace fluidic
