#include "fluidic/logic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "fluidic/error.hpp"
#include "fluidic/library.hpp"

namespace fluidic {

LogicLevel eval_gate(std::string_view kind, std::span<const LogicLevel> inputs) {
  if (kind == lib::kNot) {
    if (inputs.size() != 1)
      throw Error(Errc::ArityMismatch, "NOT takes 1 input");
    return logic_not(inputs[0]);
  }
  if (int arity = lib::nand_arity(kind)) {
    if (inputs.size() != static_cast<size_t>(arity))
      throw Error(Errc::ArityMismatch,
                  std::string(kind) + " takes " + std::to_string(arity) +
                      " inputs");
    return logic_nand(inputs);
  }
  throw Error(Errc::InvalidArgument,
              "unknown gate kind '" + std::string(kind) + "'");
}

bool edge_selected(EdgeMode mode, ClockEdge edge) {
  switch (mode) {
    case EdgeMode::Rising: return edge == ClockEdge::Rising;
    case EdgeMode::Falling: return edge == ClockEdge::Falling;
    case EdgeMode::Both: return true;
  }
  return false;
}

LogicLevel update_ff(FfKind kind, EdgeMode mode, ClockEdge edge,
                     std::span<const LogicLevel> inputs, LogicLevel q) {
  if (!edge_selected(mode, edge)) return q;
  if (kind == FfKind::T) {
    if (inputs.size() != 1)
      throw Error(Errc::ArityMismatch, "T flip-flop takes 1 data input");
    switch (inputs[0]) {
      case LogicLevel::L0: return q;
      case LogicLevel::L1: return logic_not(q);
      case LogicLevel::LX: return LogicLevel::LX;
    }
    return LogicLevel::LX;
  }
  if (inputs.size() != 2)
    throw Error(Errc::ArityMismatch, "JK flip-flop takes 2 data inputs");
  LogicLevel j = inputs[0], k = inputs[1];
  if (j == LogicLevel::LX || k == LogicLevel::LX) return LogicLevel::LX;
  if (j == LogicLevel::L0 && k == LogicLevel::L0) return q;      // hold
  if (j == LogicLevel::L1 && k == LogicLevel::L0) return LogicLevel::L1;
  if (j == LogicLevel::L0 && k == LogicLevel::L1) return LogicLevel::L0;
  return logic_not(q); // toggle
}

namespace {

struct GateModel {
  std::string kind;
  std::vector<int> inputs;
  int out = -1;
  int delay = 1;
};

struct JunctionModel {
  std::vector<int> inputs;
  int out = -1;
  int delay = 0;
};

struct FfModel {
  FfKind kind = FfKind::T;
  EdgeMode mode = EdgeMode::Rising;
  std::vector<int> data; // T or J,K
  int clk = -1;
  int q_out = -1, qbar_out = -1;
  LogicLevel state = LogicLevel::LX;
  int delay = 1;
  std::string name;
};

struct Pending {
  bool active = false;
  uint64_t epoch = 0;
  int64_t time = 0;
  LogicLevel level = LogicLevel::LX;
};

struct Event {
  int64_t time = 0;
  int klass = 0; // 0: stimulus/init, 1: driver output
  int net = 0;
  uint64_t seq = 0;
  LogicLevel level = LogicLevel::LX;
  uint64_t epoch = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.klass, a.net, a.seq) >
           std::tie(b.time, b.klass, b.net, b.seq);
  }
};

struct Engine {
  SimOptions opts;
  std::vector<std::string> net_names;
  std::map<std::string, int, std::less<>> net_index;
  std::vector<LogicLevel> level;
  std::vector<Pending> pending;
  std::vector<int> driver_of; // -1 free, otherwise an opaque tag for conflicts

  std::vector<GateModel> gates;
  std::vector<JunctionModel> junctions;
  std::vector<FfModel> ffs;

  std::vector<std::vector<int>> gate_fanout;     // net -> gate indices
  std::vector<std::vector<int>> junction_fanout; // net -> junction indices
  std::vector<std::vector<int>> clk_fanout;      // net -> ff indices

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  uint64_t seq = 0;
  Trace trace;

  int64_t osc_time = -1;
  std::map<int, int> osc_counts;

  int net(const std::string& name) {
    auto it = net_index.find(name);
    if (it != net_index.end()) return it->second;
    int id = static_cast<int>(net_names.size());
    net_names.push_back(name);
    net_index.emplace(name, id);
    level.push_back(LogicLevel::LX);
    pending.emplace_back();
    driver_of.push_back(-1);
    return id;
  }

  void claim_driver(int n, const std::string& what) {
    if (driver_of[n] >= 0)
      throw Error(Errc::InvalidArgument,
                  "net '" + net_names[n] + "' has multiple drivers (" + what +
                      ")");
    driver_of[n] = 1;
  }

  void schedule(int n, LogicLevel desired, int64_t now, int delay) {
    Pending& p = pending[n];
    if (p.active) {
      if (p.level == desired) return;
      p.active = false; // inertial cancellation
      ++p.epoch;
    }
    if (desired == level[n]) return;
    p.active = true;
    ++p.epoch;
    p.time = now + delay;
    p.level = desired;
    queue.push({p.time, 1, n, ++seq, desired, p.epoch});
  }

  LogicLevel eval_gate_model(const GateModel& g) const {
    std::vector<LogicLevel> in;
    in.reserve(g.inputs.size());
    for (int n : g.inputs) in.push_back(level[n]);
    return eval_gate(g.kind, in);
  }

  LogicLevel eval_junction(const JunctionModel& j) const {
    std::vector<LogicLevel> in;
    in.reserve(j.inputs.size());
    for (int n : j.inputs) in.push_back(level[n]);
    return logic_or(in);
  }

  void evaluate_fanout(int n, LogicLevel old_level, int64_t now) {
    for (int gi : gate_fanout[n]) {
      const GateModel& g = gates[gi];
      schedule(g.out, eval_gate_model(g), now, g.delay);
    }
    for (int ji : junction_fanout[n]) {
      const JunctionModel& j = junctions[ji];
      schedule(j.out, eval_junction(j), now, j.delay);
    }
    for (int fi : clk_fanout[n]) {
      FfModel& ff = ffs[fi];
      LogicLevel nv = level[n];
      bool rising = old_level == LogicLevel::L0 && nv == LogicLevel::L1;
      bool falling = old_level == LogicLevel::L1 && nv == LogicLevel::L0;
      if (!rising && !falling) continue; // LX transitions never clock
      ClockEdge edge = rising ? ClockEdge::Rising : ClockEdge::Falling;
      if (!edge_selected(ff.mode, edge)) continue;
      std::vector<LogicLevel> data;
      for (int d : ff.data) data.push_back(level[d]);
      ff.state = update_ff(ff.kind, ff.mode, edge, data, ff.state);
      schedule(ff.q_out, ff.state, now, ff.delay);
      schedule(ff.qbar_out, logic_not(ff.state), now, ff.delay);
    }
  }

  void apply(int n, LogicLevel v, int64_t now) {
    LogicLevel old = level[n];
    if (old == v) return;
    if (now != osc_time) {
      osc_time = now;
      osc_counts.clear();
    }
    if (++osc_counts[n] > opts.oscillation_limit)
      throw Error(Errc::OscillationAtInstant,
                  "net '" + net_names[n] + "' changed more than " +
                      std::to_string(opts.oscillation_limit) +
                      " times at time " + std::to_string(now) +
                      " (zero-delay cycle)");
    level[n] = v;
    trace.record(n, now, v);
    evaluate_fanout(n, old, now);
  }
};

int64_t to_ticks(double t) { return std::llround(t); }

} // namespace

Trace simulate(const Netlist& gate_level, const Stimulus& stimulus,
               int64_t until, const SimOptions& options) {
  if (until < 0)
    throw Error(Errc::InvalidArgument, "simulation end time must be >= 0");

  const Cell* cell = nullptr;
  if (!gate_level.top.empty())
    cell = gate_level.find_cell(gate_level.top);
  else if (gate_level.cells.size() == 1)
    cell = &gate_level.cells.front();
  if (!cell)
    throw Error(Errc::InvalidArgument,
                "logic simulation needs a flattened netlist with a top cell");

  Engine eng;
  eng.opts = options;

  int vac = eng.net(std::string(kVacRail));
  int atm = eng.net(std::string(kAtmRail));
  for (const auto& p : cell->ports) eng.net(p.name);

  struct Tie {
    int net;
    LogicLevel lvl;
    std::string comp;
  };
  std::vector<Tie> ties;

  for (const auto& comp : cell->components) {
    if (const auto* inst = std::get_if<Instance>(&comp.body)) {
      auto actual = [&](const char* formal) {
        const std::string* a = inst->actual_for(formal);
        if (!a)
          throw Error(Errc::InvalidArgument,
                      "instance '" + comp.name + "' misses port " + formal);
        return eng.net(*a);
      };
      if (lib::is_gate(inst->cell)) {
        GateModel g;
        g.kind = inst->cell;
        g.delay = inst->cell == lib::kNot ? options.delays.inverter
                                          : options.delays.nand;
        if (inst->cell == lib::kNot) {
          g.inputs = {actual("a")};
        } else {
          static const char* formals[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
          for (int i = 0; i < lib::nand_arity(inst->cell); ++i)
            g.inputs.push_back(actual(formals[i]));
        }
        g.out = actual("y");
        eng.claim_driver(g.out, "gate " + comp.name);
        eng.gates.push_back(std::move(g));
      } else if (lib::is_behavioral(inst->cell)) {
        FfModel ff;
        ff.name = comp.name;
        ff.kind = inst->cell == lib::kTffBehav ? FfKind::T : FfKind::JK;
        ff.mode = inst->edge.value_or(EdgeMode::Rising);
        ff.delay = options.delays.flipflop;
        if (ff.kind == FfKind::T)
          ff.data = {actual("T")};
        else
          ff.data = {actual("J"), actual("K")};
        ff.clk = actual("CLK");
        ff.q_out = actual("Q");
        ff.qbar_out = actual("Qbar");
        eng.claim_driver(ff.q_out, "flip-flop " + comp.name);
        eng.claim_driver(ff.qbar_out, "flip-flop " + comp.name);
        eng.ffs.push_back(std::move(ff));
      } else {
        throw Error(Errc::NotFlattened,
                    "instance '" + comp.name + "' of '" + inst->cell +
                        "'; flatten to gate level first");
      }
    } else if (const auto* j = std::get_if<Junction>(&comp.body)) {
      JunctionModel jm;
      for (const auto& n : j->in) jm.inputs.push_back(eng.net(n));
      jm.out = eng.net(j->out);
      jm.delay = options.delays.junction;
      eng.claim_driver(jm.out, "junction " + comp.name);
      eng.junctions.push_back(std::move(jm));
    } else if (const auto* r = std::get_if<Restriction>(&comp.body)) {
      bool a_rail = is_rail(r->port_a), b_rail = is_rail(r->port_b);
      if (a_rail == b_rail)
        throw Error(Errc::InvalidArgument,
                    "restriction '" + comp.name +
                        "' is not a rail tie; the logic simulator only models "
                        "gate-level netlists");
      int n = eng.net(a_rail ? r->port_b : r->port_a);
      LogicLevel lvl = (a_rail ? r->port_a : r->port_b) == kVacRail
                           ? LogicLevel::L1
                           : LogicLevel::L0;
      ties.push_back({n, lvl, comp.name});
    } else if (std::holds_alternative<Valve>(comp.body)) {
      throw Error(Errc::InvalidArgument,
                  "valve '" + comp.name +
                      "' cannot be simulated at gate level; use the analog "
                      "simulator on a valve-level netlist");
    } else if (const auto* ch = std::get_if<Chamber>(&comp.body)) {
      eng.net(ch->node); // passive at logic level
    } else if (const auto* act = std::get_if<Actuator>(&comp.body)) {
      eng.net(act->node);
    }
  }

  // gate-level restrictions may only tie otherwise-undriven nets to a rail
  for (const auto& tie : ties) eng.claim_driver(tie.net, "tie " + tie.comp);

  eng.gate_fanout.resize(eng.net_names.size());
  eng.junction_fanout.resize(eng.net_names.size());
  eng.clk_fanout.resize(eng.net_names.size());
  for (size_t i = 0; i < eng.gates.size(); ++i)
    for (int n : eng.gates[i].inputs)
      eng.gate_fanout[n].push_back(static_cast<int>(i));
  for (size_t i = 0; i < eng.junctions.size(); ++i)
    for (int n : eng.junctions[i].inputs)
      eng.junction_fanout[n].push_back(static_cast<int>(i));
  for (size_t i = 0; i < eng.ffs.size(); ++i)
    eng.clk_fanout[eng.ffs[i].clk].push_back(static_cast<int>(i));

  // Stimulus nets must be externally drivable input ports.
  std::set<std::string> stim_nets;
  for (const auto& e : stimulus.events) stim_nets.insert(e.net);
  for (const auto& c : stimulus.clocks) stim_nets.insert(c.net);
  for (const auto& name : stim_nets) {
    const Port* p = cell->find_port(name);
    if (!p || p->dir == PortDir::Out)
      throw Error(Errc::InvalidArgument,
                  "stimulus drives '" + name + "' which is not an input port");
    auto it = eng.net_index.find(name);
    if (it != eng.net_index.end() && eng.driver_of[it->second] >= 0)
      throw Error(Errc::InvalidArgument,
                  "stimulus drives internally driven net '" + name + "'");
  }

  // Trace setup: every net starts recorded at t=0.
  for (const auto& name : eng.net_names) eng.trace.add_net(name);
  eng.trace.end_time = until;
  eng.trace.stimulus_nets.assign(stim_nets.begin(), stim_nets.end());
  for (size_t i = 0; i < eng.net_names.size(); ++i)
    eng.trace.changes[i].push_back({0, LogicLevel::LX});

  auto force = [&](int n, LogicLevel v) {
    eng.level[n] = v;
    eng.trace.changes[n].back().level = v;
  };
  force(vac, LogicLevel::L1);
  force(atm, LogicLevel::L0);
  for (const auto& tie : ties) force(tie.net, tie.lvl);

  for (const auto& init : stimulus.inits) {
    auto it = eng.net_index.find(init.net);
    if (it == eng.net_index.end())
      throw Error(Errc::UnknownNet, "init names unknown net '" + init.net + "'");
    force(it->second, init.level);
  }
  // An init on a flip-flop output also seeds its internal state.
  for (auto& ff : eng.ffs) {
    bool q_init = false;
    for (const auto& init : stimulus.inits) {
      if (eng.net_index.at(init.net) == ff.q_out) {
        ff.state = init.level;
        q_init = true;
      }
    }
    if (!q_init)
      for (const auto& init : stimulus.inits)
        if (eng.net_index.at(init.net) == ff.qbar_out)
          ff.state = logic_not(init.level);
  }

  // Clock values at t=0 plus all edges as stimulus-class events.
  for (const auto& clk : stimulus.clocks) {
    int n = eng.net_index.at(clk.net);
    force(n, Stimulus::clock_level(clk, 0.0));
    for (const auto& [t, lvl] : Stimulus::clock_edges(clk, double(until))) {
      int64_t tick = to_ticks(t);
      if (tick > until) break;
      eng.queue.push({tick, 0, n, ++eng.seq, lvl, 0});
    }
  }
  for (const auto& e : stimulus.events) {
    int64_t tick = to_ticks(e.time);
    if (tick < 0)
      throw Error(Errc::InvalidArgument, "stimulus event before t=0");
    if (tick > until) continue;
    int n = eng.net_index.at(e.net);
    if (tick == 0)
      force(n, e.level);
    else
      eng.queue.push({tick, 0, n, ++eng.seq, e.level, 0});
  }

  // Initial evaluation so gates react to the forced values.
  for (const auto& g : eng.gates)
    eng.schedule(g.out, eng.eval_gate_model(g), 0, g.delay);
  for (const auto& j : eng.junctions)
    eng.schedule(j.out, eng.eval_junction(j), 0, j.delay);

  while (!eng.queue.empty() && eng.queue.top().time <= until) {
    Event ev = eng.queue.top();
    eng.queue.pop();
    if (ev.klass == 1) {
      Pending& p = eng.pending[ev.net];
      if (!p.active || p.epoch != ev.epoch) continue; // cancelled
      p.active = false;
    }
    eng.apply(ev.net, ev.level, ev.time);
  }

  return std::move(eng.trace);
}

} // namespace fluidic
