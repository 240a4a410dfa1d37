// fluidc: compiler and simulator front end for vacuum-driven fluidic logic.
//
// Exit codes: 0 success, 1 diagnostics or runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fluidic/dot.hpp"
#include "fluidic/error.hpp"
#include "fluidic/flatten.hpp"
#include "fluidic/hexapod.hpp"
#include "fluidic/json_io.hpp"
#include "fluidic/logic_sim.hpp"
#include "fluidic/parse.hpp"
#include "fluidic/serialize.hpp"
#include "fluidic/synth.hpp"
#include "fluidic/vcd.hpp"

namespace {

using namespace fluidic;

struct CliFailure {
  int code;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  out << data;
}

void report(const std::vector<Diagnostic>& diags) {
  std::cerr << format_diagnostics(diags);
}

template <typename T>
T parse_or_fail(const Parsed<T>& parsed) {
  report(parsed.diags);
  if (!parsed.ok()) throw CliFailure{1};
  return *parsed.value;
}

Netlist load_fnl(const std::string& path) {
  return parse_or_fail(parse_fnl(slurp(path), path));
}

FsmSpec load_fsm(const std::string& path) {
  return parse_or_fail(parse_fsm(slurp(path), path));
}

Stimulus load_stim(const std::string& path) {
  return parse_or_fail(parse_stim(slurp(path), path));
}

AnalogParams load_params(const std::string& path) {
  if (path.empty()) return AnalogParams{};
  return parse_or_fail(parse_params(slurp(path), path));
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> demo_vars() {
  std::vector<std::string> vars{"CLK", "x", "Q", "Qbar"};
  for (int leg = 1; leg <= 6; ++leg) vars.push_back(LegMap::leg_net(leg));
  return vars;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fluidc — fluidic logic compiler and simulator"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "validate a .fnl or .fsm file");
  std::string check_file;
  check->add_option("file", check_file, "input file")->required();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "compile an FSM to a netlist");
  std::string synth_in, synth_out = "-";
  SynthOptions synth_opts;
  std::string synth_edge = "rising";
  synth_cmd->add_option("fsm", synth_in, "input .fsm")->required();
  synth_cmd->add_option("-o,--output", synth_out, "output .fnl ('-' = stdout)");
  synth_cmd->add_flag("--ideal-routing", synth_opts.ideal_routing,
                      "route output ORs as lossless junctions");
  synth_cmd->add_flag("--behavioral-ff", synth_opts.behavioral_ffs,
                      "emit behavioral flip-flops instead of TFF_STRUCT");
  synth_cmd->add_option("--max-fan-in", synth_opts.max_fan_in,
                        "NAND fan-in limit (default 3)");
  synth_cmd->add_option("--edge", synth_edge,
                        "behavioral flip-flop edge: rising|falling|both");

  // flatten
  auto* flat_cmd = app.add_subcommand("flatten", "flatten a hierarchical netlist");
  std::string flat_in, flat_out = "-", flat_depth = "valve", flat_top;
  flat_cmd->add_option("fnl", flat_in, "input .fnl")->required();
  flat_cmd->add_option("--depth", flat_depth, "gate or valve (default valve)");
  flat_cmd->add_option("--top", flat_top, "top cell (default: netlist top)");
  flat_cmd->add_option("-o,--output", flat_out, "output .fnl");

  // sim logic|analog
  auto* sim_cmd = app.add_subcommand("sim", "simulate a netlist");
  sim_cmd->require_subcommand(1);
  auto* sim_logic = sim_cmd->add_subcommand("logic", "event-driven logic sim");
  auto* sim_analog = sim_cmd->add_subcommand("analog", "lumped RC pneumatic sim");
  std::string sim_fnl, sim_stim, sim_out = "-", sim_params, sim_csv;
  int64_t sim_until = 0;
  for (auto* sc : {sim_logic, sim_analog}) {
    sc->add_option("fnl", sim_fnl, "input .fnl")->required();
    sc->add_option("--stim", sim_stim, "stimulus file")->required();
    sc->add_option("-o,--output", sim_out, "output VCD");
  }
  sim_logic->add_option("--until", sim_until,
                        "end time in units (default: stimulus end)");
  sim_analog->add_option("--params", sim_params, "key=value parameter file");
  sim_analog->add_option("--csv", sim_csv, "also write a CSV of all pressures");

  // demo hexapod
  auto* demo_cmd = app.add_subcommand("demo", "built-in demonstrations");
  demo_cmd->require_subcommand(1);
  auto* hexapod = demo_cmd->add_subcommand("hexapod", "six-legged walk/grasp controller");
  std::string demo_mode = "behavioral", demo_routing = "ideal";
  std::string demo_out = "-", demo_report, demo_params;
  int demo_cycles = 4;
  hexapod->add_option("--mode", demo_mode, "behavioral|structural|analog");
  hexapod->add_option("--routing", demo_routing, "ideal|valved (analog only)");
  hexapod->add_option("--cycles", demo_cycles, "clock cycles with x held high");
  hexapod->add_option("--params", demo_params, "analog parameter file");
  hexapod->add_option("-o,--output", demo_out, "output VCD");
  hexapod->add_option("--report", demo_report, "write the gait report JSON");

  // export dot|json
  auto* export_cmd = app.add_subcommand("export", "schematic/JSON exporters");
  export_cmd->require_subcommand(1);
  auto* export_dot = export_cmd->add_subcommand("dot", "DOT schematic");
  auto* export_json = export_cmd->add_subcommand("json", "netlist JSON");
  std::string export_in, export_out = "-";
  for (auto* sc : {export_dot, export_json}) {
    sc->add_option("fnl", export_in, "input .fnl")->required();
    sc->add_option("-o,--output", export_out, "output file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) {
      if (ends_with(check_file, ".fsm")) {
        auto parsed = parse_fsm(slurp(check_file), check_file);
        report(parsed.diags);
        return parsed.ok() ? 0 : 1;
      }
      auto parsed = parse_fnl(slurp(check_file), check_file);
      report(parsed.diags);
      return parsed.ok() ? 0 : 1;
    }

    if (*synth_cmd) {
      if (synth_edge == "rising") {
        synth_opts.ff_edge = EdgeMode::Rising;
      } else if (synth_edge == "falling") {
        synth_opts.ff_edge = EdgeMode::Falling;
      } else if (synth_edge == "both") {
        synth_opts.ff_edge = EdgeMode::Both;
      } else {
        std::cerr << "error: unknown edge '" << synth_edge << "'\n";
        return 2;
      }
      Netlist netlist = synthesize(load_fsm(synth_in), synth_opts);
      spill(synth_out, serialize_fnl(netlist));
      return 0;
    }

    if (*flat_cmd) {
      FlattenDepth depth;
      if (flat_depth == "gate") {
        depth = FlattenDepth::Gate;
      } else if (flat_depth == "valve") {
        depth = FlattenDepth::Valve;
      } else {
        std::cerr << "error: depth must be gate or valve\n";
        return 2;
      }
      Netlist netlist = load_fnl(flat_in);
      std::string top = flat_top.empty() ? default_top(netlist) : flat_top;
      spill(flat_out, serialize_fnl(flatten(netlist, top, depth)));
      return 0;
    }

    if (*sim_logic) {
      Netlist netlist = load_fnl(sim_fnl);
      Stimulus stim = load_stim(sim_stim);
      int64_t until = sim_until > 0 ? sim_until
                                    : static_cast<int64_t>(stim.end_time);
      if (until <= 0) {
        std::cerr << "error: no end time (use 'end' in the stimulus or "
                     "--until)\n";
        return 2;
      }
      Trace trace = simulate(netlist, stim, until);
      spill(sim_out, write_vcd(trace));
      return 0;
    }

    if (*sim_analog) {
      Netlist netlist = load_fnl(sim_fnl);
      Stimulus stim = load_stim(sim_stim);
      AnalogParams params = load_params(sim_params);
      AnalogResult result = run_analog(netlist, stim, params);
      spill(sim_out, write_vcd_analog(result.analog, result.logic));
      if (!sim_csv.empty()) spill(sim_csv, write_csv(result.analog));
      return 0;
    }

    if (*hexapod) {
      DemoConfig config;
      if (demo_mode == "behavioral") {
        config.mode = DemoMode::Behavioral;
      } else if (demo_mode == "structural") {
        config.mode = DemoMode::Structural;
      } else if (demo_mode == "analog") {
        config.mode = DemoMode::Analog;
      } else {
        std::cerr << "error: unknown mode '" << demo_mode << "'\n";
        return 2;
      }
      if (demo_routing == "valved") {
        config.routing = RoutingMode::Valved;
      } else if (demo_routing != "ideal") {
        std::cerr << "error: unknown routing '" << demo_routing << "'\n";
        return 2;
      }
      config.cycles = demo_cycles;
      if (!demo_params.empty()) config.params = load_params(demo_params);

      DemoResult result = run_demo(config);
      auto vars = demo_vars();
      if (config.mode == DemoMode::Analog) {
        spill(demo_out, write_vcd_analog(*result.analog, result.trace, vars));
      } else {
        spill(demo_out, write_vcd(result.trace, "1ns", vars));
      }
      if (!demo_report.empty())
        spill(demo_report, gait_report_to_json(result.report));
      if (!result.report.violations.empty()) {
        for (const auto& v : result.report.violations)
          std::cerr << "gait violation: " << v << "\n";
        return 1;
      }
      return 0;
    }

    if (*export_dot || *export_json) {
      Netlist netlist = load_fnl(export_in);
      spill(export_out,
            *export_dot ? write_dot(netlist) : netlist_to_json(netlist));
      return 0;
    }
  } catch (const CliFailure& f) {
    return f.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
