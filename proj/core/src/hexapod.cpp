#include "fluidic/hexapod.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fluidic/error.hpp"
#include "fluidic/flatten.hpp"
#include "fluidic/library.hpp"
#include "fluidic/logic_sim.hpp"

namespace fluidic {

namespace {

BoolExpr or_not_x(const std::string& bit) {
  // bit | !x
  BoolExpr e;
  BoolExpr::Node q;
  q.kind = BoolExpr::Kind::Var;
  q.var = bit;
  int a = e.add(std::move(q));
  BoolExpr::Node x;
  x.kind = BoolExpr::Kind::Var;
  x.var = "x";
  int xi = e.add(std::move(x));
  BoolExpr::Node n;
  n.kind = BoolExpr::Kind::Not;
  n.a = xi;
  int ni = e.add(std::move(n));
  BoolExpr::Node o;
  o.kind = BoolExpr::Kind::Or;
  o.a = a;
  o.b = ni;
  e.root = e.add(std::move(o));
  return e;
}

} // namespace

FsmSpec hexapod_fsm() {
  FsmSpec spec;
  spec.name = "hexapod";
  spec.inputs = {"x"};
  LegMap legs;
  for (int leg = 1; leg <= 6; ++leg) spec.outputs.push_back(LegMap::leg_net(leg));
  spec.states = {{"GRASP", {}}, {"WALK", {}}};
  spec.initial = "GRASP";
  // A high input toggles the phase bit every tick; a low input freezes it.
  spec.transitions = {
      {0, {{0, true}}, 1},
      {0, {{0, false}}, 0},
      {1, {{0, true}}, 0},
      {1, {{0, false}}, 1},
  };
  for (int leg : legs.odd)
    spec.mealy.push_back({LegMap::leg_net(leg), or_not_x("Q0")});
  for (int leg : legs.even)
    spec.mealy.push_back({LegMap::leg_net(leg), or_not_x("Qbar0")});
  return spec;
}

Netlist build_controller(DemoMode mode, RoutingMode routing) {
  const AnalogParams defaults;
  LegMap legs;

  Cell cell;
  cell.id = "hexapod_ctrl";
  cell.ports.push_back({std::string(kVacRail), PortDir::In});
  cell.ports.push_back({"CLK", PortDir::In});
  cell.ports.push_back({"x", PortDir::In});
  for (int leg = 1; leg <= 6; ++leg)
    cell.ports.push_back({LegMap::leg_net(leg), PortDir::Out});

  Instance ff;
  ff.cell = mode == DemoMode::Behavioral ? std::string(lib::kTffBehav)
                                         : std::string(lib::kTffStruct);
  ff.port_map = {{"T", "x"}, {"CLK", "CLK"}, {"Q", "Q"}, {"Qbar", "Qbar"}};
  if (mode == DemoMode::Behavioral) ff.edge = EdgeMode::Both;
  cell.components.push_back({"u_ff", Layer::Control, std::move(ff)});

  cell.components.push_back(
      {"u_inv", Layer::Control,
       Instance{std::string(lib::kNot), {{"a", "x"}, {"y", "g"}}, {}, false}});

  auto actuator = [&](int leg, const std::string& node) {
    cell.components.push_back(
        {"act" + std::to_string(leg), Layer::Routing,
         Actuator{node, defaults.c_act, defaults.p_eng}});
  };

  if (routing == RoutingMode::Ideal) {
    for (int leg : legs.odd) {
      std::string net = LegMap::leg_net(leg);
      cell.components.push_back({"j" + std::to_string(leg), Layer::Routing,
                                 Junction{net, {"Q", "g"}}});
      actuator(leg, net);
    }
    for (int leg : legs.even) {
      std::string net = LegMap::leg_net(leg);
      cell.components.push_back({"j" + std::to_string(leg), Layer::Routing,
                                 Junction{net, {"Qbar", "g"}}});
      actuator(leg, net);
    }
  } else {
    // Two parallel pull valves per tripod bus plus a vent to atmosphere;
    // legs branch off the bus through short manifold restrictions.
    const double r_vent = 10.0 * defaults.r_on;
    const double r_link = defaults.r_on / 20.0;
    struct Group {
      const char* bus;
      const char* state_net;
      const std::array<int, 3>& legs;
    };
    for (const auto& grp : {Group{"oddbus", "Q", legs.odd},
                            Group{"evenbus", "Qbar", legs.even}}) {
      std::string bus = grp.bus;
      cell.nets.push_back(bus);
      cell.components.push_back(
          {"v_" + bus + "_q", Layer::Routing,
           Valve{grp.state_net, bus, std::string(kVacRail)}});
      cell.components.push_back(
          {"v_" + bus + "_g", Layer::Routing,
           Valve{"g", bus, std::string(kVacRail)}});
      cell.components.push_back(
          {"r_" + bus + "_vent", Layer::Routing,
           Restriction{bus, std::string(kAtmRail), r_vent}});
      for (int leg : grp.legs) {
        std::string net = LegMap::leg_net(leg);
        cell.components.push_back({"r_link" + std::to_string(leg),
                                   Layer::Routing,
                                   Restriction{bus, net, r_link}});
        actuator(leg, net);
      }
    }
  }

  Netlist out;
  out.name = "hexapod";
  out.top = cell.id;
  out.cells.push_back(std::move(cell));
  return out;
}

const char* phase_name(GaitReport::Phase phase) {
  switch (phase) {
    case GaitReport::Phase::WalkOdd: return "walk-odd";
    case GaitReport::Phase::WalkEven: return "walk-even";
    case GaitReport::Phase::Grasp: return "grasp";
    case GaitReport::Phase::Transition: return "transition";
  }
  return "transition";
}

std::vector<GaitReport::Phase> GaitReport::phase_sequence() const {
  std::vector<Phase> out;
  for (const auto& p : phases) {
    if (p.phase == Phase::Transition) continue;
    if (out.empty() || out.back() != p.phase) out.push_back(p.phase);
  }
  return out;
}

namespace {

// Boolean waveform: (time, value) change list starting at t=0.
using BoolWave = std::vector<std::pair<int64_t, bool>>;

bool wave_at(const BoolWave& w, int64_t t) {
  bool v = false;
  for (const auto& [time, value] : w) {
    if (time > t) break;
    v = value;
  }
  return v;
}

GaitReport classify_gait(const std::array<BoolWave, 6>& legs,
                         const std::vector<int64_t>& stim_changes,
                         const std::vector<GaitReport::Interval>& walk_command,
                         int64_t settle, int64_t end) {
  GaitReport report;
  report.settle = settle;
  report.end_time = end;
  report.walk_command = walk_command;

  for (int i = 0; i < 6; ++i) {
    const BoolWave& w = legs[i];
    GaitReport::Interval open{0, 0};
    bool engaged = false;
    for (const auto& [t, v] : w) {
      if (t >= end) break;
      if (v && !engaged) {
        open.begin = t;
        engaged = true;
      } else if (!v && engaged) {
        open.end = t;
        report.engagements[i].push_back(open);
        engaged = false;
      }
    }
    if (engaged) {
      open.end = end;
      report.engagements[i].push_back(open);
    }
  }

  // Elementary intervals between all change points, with settle windows
  // after stimulus changes punched out.
  std::set<int64_t> points{0, end};
  for (const auto& w : legs)
    for (const auto& [t, v] : w) {
      (void)v;
      if (t < end) points.insert(t);
    }
  std::vector<GaitReport::Interval> windows;
  for (int64_t t : stim_changes) {
    if (t >= end) continue;
    windows.push_back({t, std::min(end, t + settle)});
    points.insert(t);
    if (t + settle < end) points.insert(t + settle);
  }
  auto in_window = [&windows](int64_t t) {
    for (const auto& w : windows)
      if (t >= w.begin && t < w.end) return true;
    return false;
  };

  LegMap map;
  std::vector<int64_t> pts(points.begin(), points.end());
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    int64_t a = pts[i], b = pts[i + 1];
    if (in_window(a)) continue;
    auto tripod = [&](const std::array<int, 3>& ids) {
      for (int leg : ids)
        if (!wave_at(legs[leg - 1], a)) return false;
      return true;
    };
    bool odd = tripod(map.odd);
    bool even = tripod(map.even);
    GaitReport::Phase phase =
        odd && even
            ? GaitReport::Phase::Grasp
            : (odd ? GaitReport::Phase::WalkOdd
                   : (even ? GaitReport::Phase::WalkEven
                           : GaitReport::Phase::Transition));
    if (!report.phases.empty() && report.phases.back().phase == phase) {
      report.phases.back().end = b;
    } else {
      report.phases.push_back({a, b, phase});
    }
  }
  return report;
}

} // namespace

std::vector<std::string> check_gait(const GaitReport& report) {
  std::vector<std::string> violations;
  auto overlaps = [](const GaitReport::Interval& w, int64_t a, int64_t b) {
    return a < w.end && w.begin < b;
  };

  for (const auto& p : report.phases) {
    bool in_walk = false;
    for (const auto& w : report.walk_command)
      if (overlaps(w, p.begin, p.end)) in_walk = true;

    if (in_walk && p.phase == GaitReport::Phase::Grasp)
      violations.push_back("both tripods engaged during walk in [" +
                           std::to_string(p.begin) + ", " +
                           std::to_string(p.end) + ")");
    if (!in_walk && p.phase != GaitReport::Phase::Grasp &&
        p.phase != GaitReport::Phase::Transition)
      violations.push_back("tripod " + std::string(phase_name(p.phase)) +
                           " engaged alone during grasp in [" +
                           std::to_string(p.begin) + ", " +
                           std::to_string(p.end) + ")");
    if (p.phase == GaitReport::Phase::Transition &&
        p.end - p.begin > report.settle)
      violations.push_back("no tripod engaged for " +
                           std::to_string(p.end - p.begin) + " units in [" +
                           std::to_string(p.begin) + ", " +
                           std::to_string(p.end) + ")");
  }
  return violations;
}

namespace {

Stimulus demo_stimulus_logic(const DemoConfig& config, bool structural) {
  Stimulus stim;
  stim.timescale = 1.0;
  const double period = static_cast<double>(config.logic_period);
  ClockDef clk;
  clk.net = "CLK";
  clk.period = period;
  clk.duty = structural
                 ? static_cast<double>(config.logic_pulse_width) / period
                 : 0.5;
  clk.phase = period / 2;
  stim.clocks.push_back(clk);
  stim.events.push_back({0.0, "x", LogicLevel::L1});
  stim.events.push_back(
      {config.cycles * period + period / 4.0, "x", LogicLevel::L0});
  stim.end_time = (config.cycles + config.grasp_cycles) * period;
  stim.inits.push_back({"Q", LogicLevel::L0});
  stim.inits.push_back({"Qbar", LogicLevel::L1});
  if (structural) {
    stim.inits.push_back({"u_ff/nS", LogicLevel::L1});
    stim.inits.push_back({"u_ff/nR", LogicLevel::L1});
  }
  return stim;
}

Stimulus demo_stimulus_analog(const DemoConfig& config) {
  Stimulus stim;
  stim.timescale = 1.0; // seconds
  ClockDef clk;
  clk.net = "CLK";
  clk.period = config.analog_period;
  clk.duty = config.analog_duty;
  clk.phase = config.analog_period / 2;
  stim.clocks.push_back(clk);
  stim.events.push_back({0.0, "x", LogicLevel::L1});
  stim.events.push_back({config.cycles * config.analog_period +
                             config.analog_period / 4.0,
                         "x", LogicLevel::L0});
  stim.end_time =
      (config.cycles + config.grasp_cycles) * config.analog_period;
  stim.inits.push_back({"Q", LogicLevel::L0});
  stim.inits.push_back({"Qbar", LogicLevel::L1});
  stim.inits.push_back({"u_ff/nS", LogicLevel::L1});
  stim.inits.push_back({"u_ff/nR", LogicLevel::L1});
  return stim;
}

std::vector<GaitReport::Interval> walk_spans(const Stimulus& stim,
                                             int64_t end, double to_units) {
  // spans where x is high, from the event list
  std::vector<GaitReport::Interval> spans;
  bool high = false;
  int64_t begin = 0;
  for (const auto& e : stim.events) {
    if (e.net != "x") continue;
    int64_t t = std::llround(e.time * to_units);
    if (e.level == LogicLevel::L1 && !high) {
      begin = t;
      high = true;
    } else if (e.level == LogicLevel::L0 && high) {
      spans.push_back({begin, std::min(t, end)});
      high = false;
    }
  }
  if (high) spans.push_back({begin, end});
  return spans;
}

} // namespace

DemoResult run_demo(const DemoConfig& config) {
  DemoResult result;
  LegMap legs;

  if (config.mode == DemoMode::Analog) {
    const double tau_gate = config.params.r_pull * config.params.c_node;
    if (config.analog_period < 6.0 * tau_gate)
      throw Error(Errc::InvalidArgument,
                  "analog clock period must be at least 6 gate time "
                  "constants (" + std::to_string(6.0 * tau_gate) + " s)");

    Netlist ctrl = build_controller(DemoMode::Structural, RoutingMode::Valved);
    result.netlist = flatten(ctrl, ctrl.top, FlattenDepth::Valve);
    result.stimulus = demo_stimulus_analog(config);

    AnalogResult ar = run_analog(result.netlist, result.stimulus, config.params);

    const int64_t end_ms = ar.logic.end_time;
    const int64_t settle_ms = std::llround(config.analog_settle * 1000.0);

    // Engagement straight from pressures: engaged while at or below p_eng.
    std::array<BoolWave, 6> waves;
    for (int leg = 1; leg <= 6; ++leg) {
      int idx = ar.analog.net_index(LegMap::leg_net(leg));
      BoolWave w;
      bool cur = false;
      w.emplace_back(0, false);
      for (size_t s = 0; s < ar.analog.times.size(); ++s) {
        bool v = ar.analog.samples[idx][s] <= config.params.p_eng;
        if (v != cur) {
          w.emplace_back(std::llround(ar.analog.times[s] * 1000.0), v);
          cur = v;
        }
      }
      waves[leg - 1] = std::move(w);
    }

    std::vector<int64_t> stim_changes = ar.logic.stimulus_change_times();
    result.report = classify_gait(waves, stim_changes,
                                  walk_spans(result.stimulus, end_ms, 1000.0),
                                  settle_ms, end_ms);
    result.report.violations = check_gait(result.report);
    result.trace = std::move(ar.logic);
    result.analog = std::move(ar.analog);
    return result;
  }

  // Logic modes.
  const int64_t period = config.logic_period;
  if (period < 6)
    throw Error(Errc::InvalidArgument,
                "clock period must be at least 6 gate delays");
  bool structural = config.mode == DemoMode::Structural;
  if (structural &&
      (config.logic_pulse_width < 3 || config.logic_pulse_width > 4))
    throw Error(Errc::InvalidArgument,
                "structural mode needs a clock pulse width in [3, 4] gate "
                "delays");
  if (config.routing != RoutingMode::Ideal)
    throw Error(Errc::InvalidArgument,
                "valved routing is only simulable in analog mode");

  Netlist ctrl = build_controller(config.mode, RoutingMode::Ideal);
  result.netlist = flatten(ctrl, ctrl.top, FlattenDepth::Gate);
  result.stimulus = demo_stimulus_logic(config, structural);

  const int64_t end = std::llround(result.stimulus.end_time);
  result.trace = simulate(result.netlist, result.stimulus, end);

  std::array<BoolWave, 6> waves;
  for (int leg = 1; leg <= 6; ++leg) {
    int idx = result.trace.net_index(LegMap::leg_net(leg));
    BoolWave w;
    for (const auto& c : result.trace.changes[idx])
      w.emplace_back(c.time, c.level == LogicLevel::L1);
    waves[leg - 1] = std::move(w);
  }

  result.report = classify_gait(waves, result.trace.stimulus_change_times(),
                                walk_spans(result.stimulus, end, 1.0),
                                config.settle, end);
  result.report.violations = check_gait(result.report);
  return result;
}

} // namespace fluidic
