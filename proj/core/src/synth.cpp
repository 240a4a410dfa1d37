#include "fluidic/synth.hpp"

#include <algorithm>
#include <map>

#include "fluidic/error.hpp"
#include "fluidic/library.hpp"

namespace fluidic {

std::vector<TruthTable> derive_t_excitation(
    const FsmSpec& spec, const std::vector<uint32_t>& encoding) {
  const int bits = state_bit_count(spec);
  const int vars = bits + static_cast<int>(spec.inputs.size());

  std::map<uint32_t, int> state_of_code;
  for (size_t s = 0; s < encoding.size(); ++s) state_of_code[encoding[s]] = s;

  std::vector<TruthTable> tables(bits, TruthTable::constant(vars, TtVal::DC));
  const uint32_t code_mask = bits ? ((1u << bits) - 1) : 0;
  for (uint32_t row = 0; row < (1u << vars); ++row) {
    uint32_t code = row & code_mask;
    auto it = state_of_code.find(code);
    if (it == state_of_code.end()) continue; // unreachable code: dontcare
    std::vector<bool> in(spec.inputs.size());
    for (size_t i = 0; i < spec.inputs.size(); ++i)
      in[i] = (row >> (bits + i)) & 1u;
    uint32_t next_code = encoding[fsm_next_state(spec, it->second, in)];
    for (int b = 0; b < bits; ++b) {
      bool toggles = ((code ^ next_code) >> b) & 1u;
      tables[b].set(row, toggles ? TtVal::F1 : TtVal::F0);
    }
  }
  return tables;
}

TruthTable derive_output_table(const FsmSpec& spec,
                               const std::vector<uint32_t>& encoding,
                               std::string_view output) {
  const int bits = state_bit_count(spec);
  const int vars = bits + static_cast<int>(spec.inputs.size());
  const bool mealy = spec.is_mealy_output(output);

  std::map<uint32_t, int> state_of_code;
  for (size_t s = 0; s < encoding.size(); ++s) state_of_code[encoding[s]] = s;

  TruthTable table = TruthTable::constant(vars, TtVal::DC);
  const uint32_t code_mask = bits ? ((1u << bits) - 1) : 0;
  for (uint32_t row = 0; row < (1u << vars); ++row) {
    uint32_t code = row & code_mask;
    auto it = state_of_code.find(code);
    if (it == state_of_code.end()) continue;
    std::vector<bool> in(spec.inputs.size());
    for (size_t i = 0; i < spec.inputs.size(); ++i)
      in[i] = (row >> (bits + i)) & 1u;
    bool v = mealy ? fsm_mealy_output(spec, encoding, it->second, in, output)
                   : fsm_moore_output(spec, it->second, output);
    table.set(row, v ? TtVal::F1 : TtVal::F0);
  }
  return table;
}

namespace {

// Emits gates for one netlist cell; complement NOTs are shared across all
// covers via the memo.
struct GateMapper {
  const FsmSpec& spec;
  const SynthOptions& opts;
  int bits;
  Cell& cell;
  std::map<std::string, std::string> complements; // net -> NOT output net

  std::string signal_net(int var, bool positive) {
    if (var < bits) {
      std::string base = std::to_string(var);
      return positive ? "Q" + base : "Qbar" + base;
    }
    const std::string& input = spec.inputs[var - bits];
    return positive ? input : complement(input);
  }

  std::string complement(const std::string& net) {
    auto it = complements.find(net);
    if (it != complements.end()) return it->second;
    std::string out = "_n_" + net;
    cell.components.push_back(
        {"_u_n_" + net, Layer::Control,
         Instance{std::string(lib::kNot), {{"a", net}, {"y", out}}, {}, false}});
    complements.emplace(net, out);
    return out;
  }

  void add_nand(const std::string& name, const std::vector<std::string>& ins,
                const std::string& out) {
    // no auto-decomposition: a too-wide cover is reported, not rebalanced
    int limit = std::min(opts.max_fan_in, lib::kMaxNandArity);
    if (static_cast<int>(ins.size()) > limit)
      throw Error(Errc::NandFanInExceeded,
                  "NAND for '" + out + "' needs fan-in " +
                      std::to_string(ins.size()) + " > max " +
                      std::to_string(limit));
    Instance inst{"NAND_" + std::to_string(ins.size()), {}, {}, false};
    static const char* formals[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    for (size_t i = 0; i < ins.size(); ++i)
      inst.port_map.emplace_back(formals[i], ins[i]);
    inst.port_map.emplace_back("y", out);
    cell.components.push_back({name, Layer::Control, std::move(inst)});
  }

  void add_junction(const std::string& name, std::vector<std::string> ins,
                    const std::string& out) {
    cell.components.push_back(
        {name, Layer::Routing, Junction{out, std::move(ins)}});
  }

  void tie_to_rail(const std::string& net, bool high) {
    cell.components.push_back(
        {"_tie_" + net, Layer::Flow,
         Restriction{high ? std::string(kVacRail) : std::string(kAtmRail), net,
                     lib::default_pull_resistance()}});
  }

  /// NAND of the term's literals (= the complemented product). Single
  /// literals use free complements instead of a gate.
  std::string term_nand_net(const std::string& sig, int index, const Term& term) {
    if (term.lits.size() == 1) {
      const Literal& l = term.lits.front();
      return signal_net(l.var, !l.positive);
    }
    std::vector<std::string> ins;
    for (const auto& l : term.lits) ins.push_back(signal_net(l.var, l.positive));
    std::string out = "_t_" + sig + "_" + std::to_string(index);
    add_nand("_g_" + sig + "_" + std::to_string(index), ins, out);
    return out;
  }

  /// The term's product itself (term NAND plus an inverter when needed).
  std::string product_net(const std::string& sig, int index, const Term& term) {
    if (term.lits.size() == 1) {
      const Literal& l = term.lits.front();
      return signal_net(l.var, l.positive);
    }
    std::string tnet = term_nand_net(sig, index, term);
    std::string out = "_p_" + sig + "_" + std::to_string(index);
    cell.components.push_back(
        {"_u_p_" + sig + "_" + std::to_string(index), Layer::Control,
         Instance{std::string(lib::kNot), {{"a", tnet}, {"y", out}}, {}, false}});
    return out;
  }

  /// Synthesizes `cover` and returns the net holding its value. When
  /// `port_net` is nonempty the result must land on that named net (an
  /// output port); otherwise a suitable net (possibly a rail or an existing
  /// signal) is returned for direct binding.
  std::string emit_cover(const std::string& sig, const CoverExpr& cover,
                         const std::string& port_net) {
    auto land = [&](const std::string& net) -> std::string {
      if (port_net.empty() || net == port_net) return net;
      // outputs are real nets: wire via a routing junction
      add_junction("_j_" + port_net, {net}, port_net);
      return port_net;
    };

    if (cover.terms.empty()) { // constant 0
      if (port_net.empty()) return std::string(kAtmRail);
      tie_to_rail(port_net, false);
      return port_net;
    }
    if (cover.terms.size() == 1 && cover.terms.front().lits.empty()) {
      if (port_net.empty()) return std::string(kVacRail); // constant 1
      tie_to_rail(port_net, true);
      return port_net;
    }

    if (cover.terms.size() == 1) {
      const Term& term = cover.terms.front();
      if (term.lits.size() == 1) {
        const Literal& l = term.lits.front();
        return land(signal_net(l.var, l.positive));
      }
      // single product: term NAND + inverter
      std::string tnet = term_nand_net(sig, 0, term);
      std::string out = port_net.empty() ? "_w_" + sig : port_net;
      cell.components.push_back(
          {"_u_" + sig, Layer::Control,
           Instance{std::string(lib::kNot), {{"a", tnet}, {"y", out}}, {}, false}});
      return out;
    }

    if (opts.ideal_routing) {
      std::vector<std::string> ins;
      for (size_t i = 0; i < cover.terms.size(); ++i)
        ins.push_back(product_net(sig, static_cast<int>(i), cover.terms[i]));
      std::string out = port_net.empty() ? "_w_" + sig : port_net;
      add_junction("_j_" + sig, std::move(ins), out);
      return out;
    }

    std::vector<std::string> ins;
    for (size_t i = 0; i < cover.terms.size(); ++i)
      ins.push_back(term_nand_net(sig, static_cast<int>(i), cover.terms[i]));
    std::string out = port_net.empty() ? "_w_" + sig : port_net;
    add_nand("_g_" + sig, ins, out);
    return out;
  }
};

} // namespace

Netlist map_to_gates(const FsmSpec& spec, const std::vector<uint32_t>& encoding,
                     const std::vector<CoverExpr>& t_covers,
                     const std::vector<CoverExpr>& output_covers,
                     const SynthOptions& options) {
  const int bits = state_bit_count(spec);
  if (static_cast<int>(t_covers.size()) != bits ||
      output_covers.size() != spec.outputs.size())
    throw Error(Errc::InvalidArgument, "cover list does not match the spec");
  (void)encoding;

  Netlist out;
  out.name = spec.name;
  Cell cell;
  cell.id = spec.name.empty() ? "fsm" : spec.name;

  cell.ports.push_back({std::string(kVacRail), PortDir::In});
  if (bits > 0) cell.ports.push_back({"CLK", PortDir::In});
  for (const auto& in : spec.inputs) cell.ports.push_back({in, PortDir::In});
  for (const auto& o : spec.outputs) cell.ports.push_back({o, PortDir::Out});

  GateMapper mapper{spec, options, bits, cell, {}};

  // Excitation logic first, then the flip-flops, then output logic.
  std::vector<std::string> t_nets(bits);
  for (int b = 0; b < bits; ++b)
    t_nets[b] = mapper.emit_cover("T" + std::to_string(b), t_covers[b], "");

  for (int b = 0; b < bits; ++b) {
    std::string idx = std::to_string(b);
    Instance ff{std::string(options.behavioral_ffs ? lib::kTffBehav
                                                   : lib::kTffStruct),
                {{"T", t_nets[b]},
                 {"CLK", "CLK"},
                 {"Q", "Q" + idx},
                 {"Qbar", "Qbar" + idx}},
                {},
                false};
    if (options.behavioral_ffs) ff.edge = options.ff_edge;
    cell.components.push_back({"_ff" + idx, Layer::Control, std::move(ff)});
  }

  for (size_t i = 0; i < spec.outputs.size(); ++i)
    mapper.emit_cover(spec.outputs[i], output_covers[i], spec.outputs[i]);

  out.cells.push_back(std::move(cell));
  out.top = out.cells.front().id;
  return out;
}

Netlist synthesize(const FsmSpec& spec, const SynthOptions& options) {
  auto diags = check_fsm(spec);
  if (has_errors(diags))
    throw Error(Errc::InvalidArgument,
                "fsm fails validation: " + diags.front().to_string());

  auto encoding = encode_states(spec);
  auto t_tables = derive_t_excitation(spec, encoding);
  std::vector<CoverExpr> t_covers;
  for (const auto& t : t_tables) t_covers.push_back(minimize(t));

  std::vector<CoverExpr> output_covers;
  for (const auto& o : spec.outputs)
    output_covers.push_back(minimize(derive_output_table(spec, encoding, o)));

  return map_to_gates(spec, encoding, t_covers, output_covers, options);
}

} // namespace fluidic
