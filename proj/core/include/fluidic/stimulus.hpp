#pragma once

#include <string>
#include <vector>

#include "fluidic/trace.hpp"

namespace fluidic {

/// One timed input assignment. Times are in stimulus units (see
/// Stimulus::timescale); levels are two-valued.
struct StimEvent {
  double time = 0.0;
  std::string net;
  LogicLevel level = LogicLevel::L0;
  bool operator==(const StimEvent&) const = default;
};

/// Periodic clock, kept symbolic until a simulator materializes it. The net
/// holds `start` until `phase`, then pulses to the opposite level for
/// duty*period out of every period.
struct ClockDef {
  std::string net;
  double period = 0.0;
  double duty = 0.5;
  double phase = 0.0;
  LogicLevel start = LogicLevel::L0;
  bool operator==(const ClockDef&) const = default;
};

/// Forces a net's value at t=0 (logic level or the matching rail pressure).
/// The supported power-up mechanism for latches and flip-flops.
struct InitDirective {
  std::string net;
  LogicLevel level = LogicLevel::L0;
  bool operator==(const InitDirective&) const = default;
};

struct Stimulus {
  double timescale = 1e-3; // seconds per stimulus time unit (default: ms)
  std::vector<InitDirective> inits;
  std::vector<StimEvent> events; // times non-decreasing
  std::vector<ClockDef> clocks;
  double end_time = 0.0;

  /// Materialized clock transitions up to `until` (stimulus units).
  static std::vector<std::pair<double, LogicLevel>> clock_edges(
      const ClockDef& clock, double until);
  /// Clock level at time t (stimulus units).
  static LogicLevel clock_level(const ClockDef& clock, double t);

  /// All nets driven by events or clocks, in first-use order.
  std::vector<std::string> driven_nets() const;
};

} // namespace fluidic
