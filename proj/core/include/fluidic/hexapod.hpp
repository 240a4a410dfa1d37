#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidic/analog_sim.hpp"
#include "fluidic/fsm.hpp"
#include "fluidic/netlist.hpp"
#include "fluidic/stimulus.hpp"
#include "fluidic/trace.hpp"

namespace fluidic {

enum class DemoMode { Behavioral, Structural, Analog };
enum class RoutingMode { Ideal, Valved };

/// The bundled two-state walk/grasp machine: input x, six leg outputs.
/// x high toggles the state bit every tick (alternating tripods); x low
/// freezes it and the grasp override engages every leg.
FsmSpec hexapod_fsm();

/// Odd tripod {1,3,5} follows Q, even tripod {2,4,6} follows Qbar, the
/// grasp signal NOT(x) merges into both groups.
struct LegMap {
  std::array<int, 3> odd{{1, 3, 5}};
  std::array<int, 3> even{{2, 4, 6}};
  static std::string leg_net(int leg) { return "leg" + std::to_string(leg); }
};

/// Hand-built walk/grasp controller: ports {VAC, CLK, x} plus leg1..leg6.
/// Ideal routing merges the grasp override with lossless junctions (11
/// switches after valve-level flattening); valved routing pulls each tripod
/// bus through two parallel valves plus a vent restriction (15 switches).
Netlist build_controller(DemoMode mode, RoutingMode routing);

struct GaitReport {
  enum class Phase { WalkOdd, WalkEven, Grasp, Transition };

  struct Interval {
    int64_t begin = 0, end = 0;
  };
  struct PhaseInterval {
    int64_t begin = 0, end = 0;
    Phase phase = Phase::Transition;
  };

  std::array<std::vector<Interval>, 6> engagements; // per leg, disjoint, ordered
  std::vector<PhaseInterval> phases;                // settle-windowed
  std::vector<Interval> walk_command;               // spans where x is high
  int64_t settle = 0;
  int64_t end_time = 0;
  std::vector<std::string> violations;

  /// Phase labels in order, transitions dropped, repeats merged.
  std::vector<Phase> phase_sequence() const;
};

const char* phase_name(GaitReport::Phase phase);

/// Gait invariants: exactly one tripod engaged during walk, all six during
/// grasp, and no zero-engagement gap longer than the settle window. Returns
/// human-readable violations (empty = pass).
std::vector<std::string> check_gait(const GaitReport& report);

struct DemoConfig {
  DemoMode mode = DemoMode::Behavioral;
  RoutingMode routing = RoutingMode::Ideal; // analog runs force Valved
  int cycles = 4;           // clock periods with x held high
  int grasp_cycles = 2;     // extra periods with x low
  int64_t logic_period = 20;
  int logic_pulse_width = 3; // structural mode, must sit in [3d, 4d]
  double analog_period = 2.0; // seconds (0.5 Hz)
  double analog_duty = 0.125; // pulse width inside the TFF traversal window
  AnalogParams params;
  int64_t settle = 4;        // logic units
  double analog_settle = 0.5; // seconds
};

struct DemoResult {
  Netlist netlist;   // flattened controller that was simulated
  Stimulus stimulus;
  Trace trace;       // logic view (thresholded when analog)
  std::optional<AnalogTrace> analog;
  GaitReport report;
};

/// Builds the controller, clocks it per mode, simulates and classifies the
/// gait. Behavioral mode toggles on both clock edges; structural and analog
/// modes toggle once per pulse.
DemoResult run_demo(const DemoConfig& config);

} // namespace fluidic
