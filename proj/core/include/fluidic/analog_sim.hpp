#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fluidic/analog_params.hpp"
#include "fluidic/netlist.hpp"
#include "fluidic/stimulus.hpp"
#include "fluidic/trace.hpp"

namespace fluidic {

/// Node pressures plus valve configuration at one instant. Pressure indices
/// follow AnalogSim::nets(), valve indices AnalogSim::valves().
struct AnalogState {
  double time = 0.0;
  std::vector<double> pressure;
  std::vector<bool> valve_open;
};

struct ValveEvent {
  double time = 0.0;
  std::string valve;
  bool open = false;
};

struct AnalogTrace {
  std::vector<std::string> nets;
  std::vector<double> times;
  std::vector<std::vector<double>> samples; // [net][sample]
  std::vector<ValveEvent> valve_events;
  double end_time = 0.0;

  int net_index(std::string_view net) const;
  /// Pressure at `time` (last sample at or before it).
  double value_at(std::string_view net, double time) const;
};

/// Piecewise-linear RC integrator over a valve-level netlist. Within one
/// valve configuration the network is linear and advanced by implicit Euler
/// with one LU factorization per (configuration, step size); valves switch
/// with hysteresis on gate pressure (open at p_open, close at p_close) and
/// threshold crossings inside a step are located by bisection to step_h/100
/// before the configuration changes. Junction outputs are derived nets that
/// follow the strongest vacuum among their inputs.
class AnalogSim {
public:
  /// Throws Error{FloatingNode} for a free node without a resistive path to
  /// a rail or source, Error{NotFlattened} on remaining instances.
  AnalogSim(const Netlist& valve_level, const AnalogParams& params,
            const std::vector<std::string>& source_nets);

  const std::vector<std::string>& nets() const;
  const std::vector<std::string>& valves() const;
  const AnalogState& state() const;
  double pressure(std::string_view net) const;

  /// Forces a free node's pressure before the first step (init directives).
  void force_initial_pressure(std::string_view net, double pascals);
  /// Sets a source's value at t=0 without slewing.
  void set_source_initial(std::string_view net, double pascals);

  /// Advances by dt (default params.step_h). `boundary` holds target
  /// pressures per source net; sources slew toward their targets at
  /// |p_vac|/slew. Throws Error{NonConvergence} if the solve fails.
  void step(const std::map<std::string, double>& boundary, double dt = 0.0);

  std::vector<ValveEvent> take_valve_events();

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct AnalogResult {
  AnalogTrace analog;
  /// Thresholded logic view (v_ih/v_il with LX between), times in ms.
  Trace logic;
};

/// Runs the stimulus against a valve-level netlist: stimulus nets become
/// slewing pressure sources, init directives force node pressures at t=0,
/// and every net is recorded at each step (decimated by record_stride).
AnalogResult run_analog(const Netlist& valve_level, const Stimulus& stimulus,
                        const AnalogParams& params);

struct TransitionTimes {
  std::string net;
  double rise_10_90 = -1.0; // seconds; -1 when the net never rises
  double fall_10_90 = -1.0;
};

/// 10-90% times of the first complete rise (toward vacuum) and fall per net,
/// measured against the full 0..p_vac swing with linear interpolation
/// between samples. Nets that never transition are omitted.
std::vector<TransitionTimes> timing_report(const AnalogTrace& trace,
                                           const AnalogParams& params);

} // namespace fluidic
