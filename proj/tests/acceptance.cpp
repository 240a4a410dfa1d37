// Acceptance suite: one check per shipped claim, each printed as a PASS/FAIL
// line with its runtime and limit. Returns nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "fluidic/analog_sim.hpp"
#include "fluidic/flatten.hpp"
#include "fluidic/hexapod.hpp"
#include "fluidic/library.hpp"
#include "fluidic/logic_sim.hpp"
#include "fluidic/minimize.hpp"
#include "fluidic/parse.hpp"
#include "fluidic/synth.hpp"

#include "support/builders.hpp"
#include "support/fsm_harness.hpp"

using namespace fluidic;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FsmSpec bundled_fsm() {
  auto parsed = parse_fsm(slurp(fs::path(DATA_DIR) / "hexapod.fsm"),
                          "hexapod.fsm");
  if (!parsed.ok()) throw std::runtime_error("bundled FSM fails to parse");
  return *parsed.value;
}

// ---- criterion 1: switch-count reproduction ------------------------------

bool switch_count(std::string& detail) {
  SynthOptions opts;
  opts.ideal_routing = true;
  Netlist gates = synthesize(bundled_fsm(), opts);
  Netlist flat = flatten(gates, gates.top, FlattenDepth::Valve);
  int valves = valve_count(flat);

  const auto& ports = flat.cells[0].ports;
  int inputs = 0, outputs = 0;
  bool names_ok = ports.size() == 9 && ports[0].name == "VAC" &&
                  ports[1].name == "CLK" && ports[2].name == "x";
  for (const auto& p : ports) {
    (p.dir == PortDir::Out ? outputs : inputs) += 1;
  }

  detail = std::to_string(valves) + " valves, " + std::to_string(inputs) +
           " inputs, " + std::to_string(outputs) + " actuator outputs";
  return valves == 11 && inputs == 3 && outputs == 6 && names_ok;
}

// ---- criterion 2: behavioral timing-diagram reproduction -----------------

Trace render_interpreter_trace(const FsmSpec& spec, const DemoConfig& config) {
  const int64_t period = config.logic_period;
  const int64_t end = (config.cycles + config.grasp_cycles) * period;
  const int64_t t_x0 = config.cycles * period + period / 4;

  Trace t;
  int q = t.add_net("Q");
  int clk = t.add_net("CLK");
  int x = t.add_net("x");
  std::vector<int> legs;
  for (int leg = 1; leg <= 6; ++leg) legs.push_back(t.add_net(LegMap::leg_net(leg)));
  t.stimulus_nets = {"CLK", "x"};
  t.end_time = end;

  auto encoding = encode_states(spec);
  int state = spec.state_index(spec.initial);

  // event times: clock edges every period/2 from period/2, plus the x drop
  std::vector<int64_t> events{0};
  for (int64_t e = period / 2; e <= end; e += period / 2) events.push_back(e);
  events.push_back(t_x0);
  std::sort(events.begin(), events.end());

  LogicLevel clk_level = LogicLevel::L0;
  for (int64_t e : events) {
    bool x_now = e < t_x0;
    bool is_edge = e > 0 && (e % (period / 2)) == 0;
    if (is_edge) {
      clk_level = logic_not(clk_level);
      t.record(clk, e, clk_level);
      state = fsm_next_state(spec, state, {x_now});
    }
    t.record(x, e, x_now ? LogicLevel::L1 : LogicLevel::L0);
    bool q_bit = (encoding[state] & 1u) != 0;
    t.record(q, e, q_bit ? LogicLevel::L1 : LogicLevel::L0);
    for (int leg = 1; leg <= 6; ++leg) {
      bool odd = leg % 2 == 1;
      bool engaged = (odd ? q_bit : !q_bit) || !x_now;
      t.record(legs[leg - 1], e, engaged ? LogicLevel::L1 : LogicLevel::L0);
    }
  }
  return t;
}

bool behavioral_walk(std::string& detail) {
  DemoConfig config;
  config.cycles = 4;
  DemoResult result = run_demo(config);

  Trace expected = render_interpreter_trace(hexapod_fsm(), config);
  std::vector<std::string> nets{"Q"};
  for (int leg = 1; leg <= 6; ++leg) nets.push_back(LegMap::leg_net(leg));
  auto divergence = compare_traces(result.trace, expected, nets, config.settle);
  if (divergence) {
    detail = "trace diverges from the interpreter on " + divergence->net +
             " at t=" + std::to_string(divergence->time);
    return false;
  }

  // all six legs engaged within one settle window of the x drop
  const int64_t t_x0 = config.cycles * config.logic_period +
                       config.logic_period / 4;
  for (int leg = 0; leg < 6; ++leg) {
    bool covered = false;
    for (const auto& iv : result.report.engagements[leg]) {
      if (iv.begin <= t_x0 + config.settle && iv.end >= result.report.end_time)
        covered = true;
    }
    if (!covered) {
      detail = "leg " + std::to_string(leg + 1) + " not engaged through grasp";
      return false;
    }
  }

  // flip-flop holds during grasp
  int q = result.trace.net_index("Q");
  for (const auto& c : result.trace.changes[q]) {
    if (c.time > t_x0 + config.settle) {
      detail = "flip-flop output changed during grasp";
      return false;
    }
  }

  detail = "tripods alternate on all 8 edges, grasp engages all legs";
  return result.report.violations.empty();
}

// ---- criterion 3: structural flip-flop behavior --------------------------

bool structural_tff(std::string& detail) {
  Netlist tff = flatten({}, lib::kTffStruct, FlattenDepth::Gate);
  const int pulses = 20;

  auto run = [&](LogicLevel t_level) {
    Stimulus stim;
    stim.inits = {{"Q", LogicLevel::L0},
                  {"Qbar", LogicLevel::L1},
                  {"nS", LogicLevel::L1},
                  {"nR", LogicLevel::L1}};
    stim.events = {{0, "T", t_level}};
    ClockDef clk;
    clk.net = "CLK";
    clk.period = 10;
    clk.duty = 0.3; // 3-unit pulse at unit gate delay
    clk.phase = 5;
    stim.clocks.push_back(clk);
    return simulate(tff, stim, 5 + pulses * 10);
  };

  auto toggles = [](const Trace& trace) {
    int idx = trace.net_index("Q");
    int count = 0;
    LogicLevel prev = LogicLevel::LX;
    for (const auto& c : trace.changes[idx]) {
      if ((prev == LogicLevel::L0 && c.level == LogicLevel::L1) ||
          (prev == LogicLevel::L1 && c.level == LogicLevel::L0))
        ++count;
      prev = c.level;
    }
    return count;
  };

  int active = toggles(run(LogicLevel::L1));
  int hold = toggles(run(LogicLevel::L0));
  detail = std::to_string(active) + " toggles with T=1, " +
           std::to_string(hold) + " with T=0 over " + std::to_string(pulses) +
           " pulses";
  return active == pulses && hold == 0;
}

// ---- criterion 4: analog/logic gate equivalence --------------------------

bool analog_logic_equivalence(std::string& detail) {
  AnalogParams params;
  params.end_time = 1.5;
  auto threshold = [&params](double p) {
    if (p <= params.v_ih) return LogicLevel::L1;
    if (p >= params.v_il) return LogicLevel::L0;
    return LogicLevel::LX;
  };

  int cases = 0;
  struct GateCase {
    std::string_view id;
    std::vector<std::string> inputs;
  };
  for (const auto& gc : {GateCase{lib::kNot, {"a"}},
                         GateCase{lib::kNand2, {"a", "b"}},
                         GateCase{lib::kNand3, {"a", "b", "c"}}}) {
    Netlist valve = flatten({}, gc.id, FlattenDepth::Valve);
    for (uint32_t combo = 0; combo < (1u << gc.inputs.size()); ++combo) {
      Stimulus stim;
      stim.timescale = 1.0;
      stim.end_time = 1.5;
      std::vector<LogicLevel> levels;
      for (size_t i = 0; i < gc.inputs.size(); ++i) {
        LogicLevel v = ((combo >> i) & 1u) ? LogicLevel::L1 : LogicLevel::L0;
        stim.events.push_back({0, gc.inputs[i], v});
        levels.push_back(v);
      }
      AnalogResult res = run_analog(valve, stim, params);
      if (threshold(res.analog.value_at("y", 1.5)) != eval_gate(gc.id, levels)) {
        detail = std::string(gc.id) + " combo " + std::to_string(combo) +
                 " disagrees with eval_gate";
        return false;
      }
      ++cases;
    }
  }

  // SR latch sequences: set, hold, reset, hold
  Netlist latch = flatten({}, lib::kSrLatch, FlattenDepth::Valve);
  Stimulus stim;
  stim.timescale = 1.0;
  stim.end_time = 8.0;
  stim.events = {
      {0.0, "nS", LogicLevel::L0}, {0.0, "nR", LogicLevel::L1},
      {2.0, "nS", LogicLevel::L1},
      {4.0, "nR", LogicLevel::L0},
      {6.0, "nR", LogicLevel::L1},
  };
  AnalogParams latch_params;
  latch_params.end_time = 8.0;
  AnalogResult res = run_analog(latch, stim, latch_params);
  struct Probe {
    double t;
    LogicLevel q;
  };
  for (const auto& probe : {Probe{1.9, LogicLevel::L1}, {3.9, LogicLevel::L1},
                            {5.9, LogicLevel::L0}, {7.9, LogicLevel::L0}}) {
    LogicLevel q = threshold(res.analog.value_at("Q", probe.t));
    LogicLevel qb = threshold(res.analog.value_at("Qbar", probe.t));
    if (q != probe.q || qb != logic_not(probe.q)) {
      detail = "latch sequence diverges at t=" + std::to_string(probe.t);
      return false;
    }
    ++cases;
  }

  detail = std::to_string(cases) + " input combinations match after thresholding";
  return true;
}

// ---- criterion 5: RC fidelity --------------------------------------------

bool rc_fidelity(std::string& detail) {
  AnalogParams params;
  const double tau = params.r_pull * params.c_node;
  params.end_time = 3.2 * tau;

  Cell cell;
  cell.id = "rc";
  cell.components.push_back(
      {"r1", Layer::Flow,
       Restriction{std::string(kVacRail), "n", params.r_pull}});
  Netlist nl;
  nl.top = "rc";
  nl.cells.push_back(std::move(cell));

  Stimulus stim;
  stim.timescale = 1.0;
  stim.end_time = params.end_time;
  AnalogResult res = run_analog(nl, stim, params);
  for (double k : {1.0, 2.0, 3.0}) {
    double expected = params.p_vac * (1.0 - std::exp(-k));
    double got = res.analog.value_at("n", k * tau);
    if (std::fabs(got - expected) > 0.01 * std::fabs(expected)) {
      detail = "charging error at " + std::to_string(k) + " tau exceeds 1%";
      return false;
    }
  }

  // 10-90% rise time linear in c_node across a 4-point sweep
  Netlist inv = flatten({}, lib::kNot, FlattenDepth::Valve);
  double ratio_min = 0, ratio_max = 0;
  for (double c : {5e-11, 1e-10, 2e-10, 4e-10}) {
    AnalogParams sweep;
    sweep.c_node = c;
    sweep.end_time = 3.5 * sweep.r_pull * c;
    Stimulus s;
    s.timescale = 1.0;
    s.end_time = sweep.end_time;
    s.events = {{0, "a", LogicLevel::L0}};
    AnalogResult r = run_analog(inv, s, sweep);
    double rise = -1;
    for (const auto& tt : timing_report(r.analog, sweep)) {
      if (tt.net == "y") rise = tt.rise_10_90;
    }
    if (rise <= 0) {
      detail = "no rise measured in the sweep";
      return false;
    }
    double ratio = rise / c;
    if (ratio_min == 0 || ratio < ratio_min) ratio_min = ratio;
    if (ratio > ratio_max) ratio_max = ratio;
  }
  if (ratio_max / ratio_min > 1.05) {
    detail = "rise time is not linear in c_node within 5%";
    return false;
  }
  detail = "charging within 1% at tau..3tau; rise/c_node spread " +
           std::to_string((ratio_max / ratio_min - 1.0) * 100.0) + "%";
  return true;
}

// ---- criterion 6: synthesis soundness ------------------------------------

bool synthesis_soundness(std::string& detail) {
  std::mt19937 rng(2026);
  for (int round = 0; round < 100; ++round) {
    FsmSpec spec = testutil::random_fsm(rng, 4, 2);
    SynthOptions opts;
    opts.behavioral_ffs = true;
    opts.max_fan_in = lib::kMaxNandArity;
    Netlist flat =
        flatten(synthesize(spec, opts), spec.name, FlattenDepth::Gate);
    auto inputs = testutil::random_inputs(rng, spec.inputs.size(), 20);
    std::string mismatch =
        testutil::circuit_vs_interpreter(spec, flat, {20, inputs});
    if (!mismatch.empty()) {
      detail = "round " + std::to_string(round) + ": " + mismatch;
      return false;
    }
  }
  detail = "100 random machines match the interpreter over 20 steps";
  return true;
}

// ---- criterion 7: minimizer correctness -----------------------------------

bool minimizer_correctness(std::string& detail) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> val(0, 5);
  for (int round = 0; round < 200; ++round) {
    TruthTable t = TruthTable::constant(4, TtVal::F0);
    int minterms = 0;
    for (uint32_t r = 0; r < 16; ++r) {
      int v = val(rng);
      TtVal cell = v <= 1 ? TtVal::F0
                          : (v <= 3 ? TtVal::F1
                                    : (round % 2 ? TtVal::DC : TtVal::F0));
      t.set(r, cell);
      if (cell == TtVal::F1) ++minterms;
    }
    CoverExpr cover = minimize(t);
    for (uint32_t r = 0; r < 16; ++r) {
      if (t.at(r) == TtVal::DC) continue;
      if (cover.eval(r) != (t.at(r) == TtVal::F1)) {
        detail = "cover differs from its table on row " + std::to_string(r);
        return false;
      }
    }
    bool cheaper =
        static_cast<int>(cover.terms.size()) < minterms ||
        (static_cast<int>(cover.terms.size()) == minterms &&
         cover.literal_count() <= minterms * 4);
    if (minterms > 0 && !cheaper) {
      detail = "cover costs more than the raw minterm cover";
      return false;
    }
  }
  detail = "200 random 4-variable tables verified exhaustively";
  return true;
}

// ---- criterion 8: CLI determinism -----------------------------------------

bool run_cmd(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  return rc == 0;
}

bool cli_determinism(std::string& detail) {
  const std::string bin = FLUIDC_BIN;
  const fs::path data = DATA_DIR;
  fs::path tmp = fs::temp_directory_path() / "fluidic_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  struct Pipeline {
    std::string name;
    std::string cmd; // with {} placeholder for the output basename suffix
    std::vector<std::string> outputs;
  };

  auto p = [&tmp](const std::string& name) { return (tmp / name).string(); };

  std::vector<Pipeline> pipelines = {
      {"synth",
       bin + " synth " + (data / "hexapod.fsm").string() +
           " --ideal-routing -o " + p("synth{}.fnl"),
       {"synth{}.fnl"}},
      {"synth-behavioral",
       bin + " synth " + (data / "hexapod.fsm").string() +
           " --ideal-routing --behavioral-ff --edge both -o " + p("beh{}.fnl"),
       {"beh{}.fnl"}},
      {"flatten",
       bin + " flatten " + p("synth1.fnl") + " --depth valve -o " +
           p("flat{}.fnl"),
       {"flat{}.fnl"}},
      {"sim-logic",
       bin + " sim logic " + p("beh1.fnl") + " --stim " +
           (data / "walk.stim").string() + " -o " + p("logic{}.vcd"),
       {"logic{}.vcd"}},
      {"sim-analog",
       bin + " sim analog " + (data / "inverter.fnl").string() + " --stim " +
           (data / "inverter.stim").string() + " --params " +
           (data / "default.params").string() + " -o " + p("ana{}.vcd") +
           " --csv " + p("ana{}.csv"),
       {"ana{}.vcd", "ana{}.csv"}},
      {"demo-behavioral",
       bin + " demo hexapod --cycles 4 -o " + p("demo{}.vcd") + " --report " +
           p("demo{}.json"),
       {"demo{}.vcd", "demo{}.json"}},
      {"demo-analog",
       bin + " demo hexapod --mode analog --cycles 2 -o " + p("ademo{}.vcd") +
           " --report " + p("ademo{}.json"),
       {"ademo{}.vcd", "ademo{}.json"}},
      {"export-dot", bin + " export dot " + p("flat1.fnl") + " -o " + p("dot{}.dot"),
       {"dot{}.dot"}},
      {"export-json",
       bin + " export json " + p("flat1.fnl") + " -o " + p("json{}.json"),
       {"json{}.json"}},
  };

  auto subst = [](std::string s, const std::string& suffix) {
    size_t pos;
    while ((pos = s.find("{}")) != std::string::npos) s.replace(pos, 2, suffix);
    return s;
  };

  for (const auto& pipe : pipelines) {
    for (const char* suffix : {"1", "2"}) {
      if (!run_cmd(subst(pipe.cmd, suffix))) {
        detail = pipe.name + " exited nonzero";
        return false;
      }
    }
    for (const auto& out : pipe.outputs) {
      std::string a = slurp(subst(p(out), "1"));
      std::string b = slurp(subst(p(out), "2"));
      if (a != b) {
        detail = pipe.name + ": " + subst(out, "N") + " differs between runs";
        return false;
      }
      if (a.empty()) {
        detail = pipe.name + " produced an empty " + subst(out, "N");
        return false;
      }
    }
  }
  detail = std::to_string(pipelines.size()) + " pipelines byte-identical";
  return true;
}

// ---- criterion 9: end-to-end analog demo ----------------------------------

bool analog_demo(std::string& detail) {
  DemoConfig behavioral;
  behavioral.cycles = 4; // both-edge: 8 toggles

  DemoConfig analog;
  analog.mode = DemoMode::Analog;
  analog.cycles = 8; // once per pulse: 8 toggles at 0.5 Hz

  DemoResult b = run_demo(behavioral);
  DemoResult a = run_demo(analog);

  if (!b.report.violations.empty() || !a.report.violations.empty()) {
    detail = "gait violations reported";
    return false;
  }
  auto bs = b.report.phase_sequence();
  auto as = a.report.phase_sequence();
  if (bs != as) {
    detail = "phase sequences differ (behavioral " + std::to_string(bs.size()) +
             " entries, analog " + std::to_string(as.size()) + ")";
    return false;
  }

  // passivity at every recorded sample
  const double tol = 1e-9 * std::fabs(analog.params.p_vac);
  for (const auto& samples : a.analog->samples) {
    for (double pr : samples) {
      if (pr > tol || pr < analog.params.p_vac - tol) {
        detail = "pressure escapes [p_vac, 0]";
        return false;
      }
    }
  }
  detail = "phase sequence of " + std::to_string(bs.size()) +
           " entries reproduced; passivity holds at every sample";
  return true;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    double limit_s;
    std::function<bool(std::string&)> fn;
  };
  std::vector<Criterion> criteria = {
      {1, "switch-count reproduction (11 valves, 3 inputs, 6 outputs)", 1.0,
       switch_count},
      {2, "behavioral timing-diagram reproduction vs interpreter", 1.0,
       behavioral_walk},
      {3, "structural flip-flop: one toggle per pulse over 20 pulses", 1.0,
       structural_tff},
      {4, "analog/logic gate equivalence after thresholding", 10.0,
       analog_logic_equivalence},
      {5, "RC fidelity: closed form within 1%, rise linear in c_node", 10.0,
       rc_fidelity},
      {6, "synthesis soundness on 100 random machines", 30.0,
       synthesis_soundness},
      {7, "exact minimizer on 200 random 4-variable tables", 10.0,
       minimizer_correctness},
      {8, "CLI determinism: byte-identical reruns", 60.0, cli_determinism},
      {9, "end-to-end analog demo at 0.5 Hz", 60.0, analog_demo},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.limit_s) {
      ok = false;
      detail += " [exceeded " + std::to_string(c.limit_s) + " s limit]";
    }
    std::printf("[%s] criterion %d: %s (%.2f s / %.0f s) %s\n",
                ok ? "PASS" : "FAIL", c.id, c.label, seconds, c.limit_s,
                detail.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
