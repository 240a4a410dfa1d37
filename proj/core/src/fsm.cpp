#include "fluidic/fsm.hpp"

#include <algorithm>
#include <set>

#include "fluidic/error.hpp"
#include "fluidic/netlist.hpp"

namespace fluidic {

int BoolExpr::add(Node n) {
  nodes.push_back(std::move(n));
  root = static_cast<int>(nodes.size()) - 1;
  return root;
}

BoolExpr BoolExpr::constant(bool v) {
  BoolExpr e;
  Node n;
  n.kind = Kind::Const;
  n.cval = v;
  e.add(std::move(n));
  return e;
}

BoolExpr BoolExpr::variable(std::string name) {
  BoolExpr e;
  Node n;
  n.kind = Kind::Var;
  n.var = std::move(name);
  e.add(std::move(n));
  return e;
}

std::vector<std::string> BoolExpr::variables() const {
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    if (n.kind == Kind::Var &&
        std::find(out.begin(), out.end(), n.var) == out.end())
      out.push_back(n.var);
  }
  return out;
}

namespace {

void expr_to_string(const BoolExpr& e, int i, std::string& out) {
  const auto& n = e.nodes[i];
  switch (n.kind) {
    case BoolExpr::Kind::Const: out += n.cval ? "1" : "0"; break;
    case BoolExpr::Kind::Var: out += n.var; break;
    case BoolExpr::Kind::Not:
      out += "!";
      if (e.nodes[n.a].kind == BoolExpr::Kind::And ||
          e.nodes[n.a].kind == BoolExpr::Kind::Or) {
        out += "(";
        expr_to_string(e, n.a, out);
        out += ")";
      } else {
        expr_to_string(e, n.a, out);
      }
      break;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      bool is_or = n.kind == BoolExpr::Kind::Or;
      auto wrap = [&](int k) {
        bool paren = !is_or && e.nodes[k].kind == BoolExpr::Kind::Or;
        if (paren) out += "(";
        expr_to_string(e, k, out);
        if (paren) out += ")";
      };
      wrap(n.a);
      out += is_or ? " | " : " & ";
      wrap(n.b);
      break;
    }
  }
}

} // namespace

std::string BoolExpr::to_string() const {
  if (root < 0) return "0";
  std::string out;
  expr_to_string(*this, root, out);
  return out;
}

int FsmSpec::state_index(std::string_view name) const {
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int FsmSpec::input_index(std::string_view name) const {
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool FsmSpec::is_mealy_output(std::string_view name) const {
  for (const auto& m : mealy) {
    if (m.name == name) return true;
  }
  return false;
}

int state_bit_count(const FsmSpec& spec) {
  int bits = 0;
  while ((1u << bits) < spec.states.size()) ++bits;
  return bits;
}

std::vector<uint32_t> encode_states(const FsmSpec& spec) {
  std::vector<uint32_t> codes(spec.states.size(), 0);
  int initial = spec.state_index(spec.initial);
  uint32_t next = 1;
  for (size_t i = 0; i < spec.states.size(); ++i) {
    if (static_cast<int>(i) == initial) continue;
    codes[i] = next++;
  }
  return codes;
}

namespace {

bool guard_matches(const FsmTransition& t, const std::vector<bool>& inputs) {
  for (const auto& lit : t.guard) {
    if (inputs[lit.input] != lit.value) return false;
  }
  return true;
}

/// Variable lookup for Mealy expressions: Q<i>/Qbar<i> or an input name.
bool mealy_var(const FsmSpec& spec, uint32_t code,
               const std::vector<bool>& inputs, const std::string& var) {
  if (var.size() > 1 && var[0] == 'Q') {
    bool bar = var.compare(0, 4, "Qbar") == 0;
    const std::string digits = var.substr(bar ? 4 : 1);
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      int bit = std::stoi(digits);
      bool v = (code >> bit) & 1u;
      return bar ? !v : v;
    }
  }
  int idx = spec.input_index(var);
  if (idx < 0)
    throw Error(Errc::InvalidArgument,
                "unknown variable '" + var + "' in mealy expression");
  return inputs[idx];
}

} // namespace

int fsm_next_state(const FsmSpec& spec, int state,
                   const std::vector<bool>& inputs) {
  for (const auto& t : spec.transitions) {
    if (t.from == state && guard_matches(t, inputs)) return t.to;
  }
  if (spec.implicit_self_loops) return state;
  throw Error(Errc::InvalidArgument,
              "no transition from state '" + spec.states[state].name + "'");
}

bool fsm_moore_output(const FsmSpec& spec, int state, std::string_view output) {
  for (const auto& [name, value] : spec.states[state].moore) {
    if (name == output) return value;
  }
  return false;
}

bool fsm_mealy_output(const FsmSpec& spec, const std::vector<uint32_t>& encoding,
                      int state, const std::vector<bool>& inputs,
                      std::string_view output) {
  for (const auto& m : spec.mealy) {
    if (m.name == output)
      return m.expr.eval([&](const std::string& var) {
        return mealy_var(spec, encoding[state], inputs, var);
      });
  }
  throw Error(Errc::InvalidArgument,
              "'" + std::string(output) + "' is not a mealy output");
}

std::vector<int> FsmRun::states() const {
  std::vector<int> out{initial_state};
  for (const auto& s : steps) out.push_back(s.state_after);
  return out;
}

FsmRun interpret_fsm(const FsmSpec& spec,
                     const std::vector<std::vector<bool>>& input_sequence) {
  auto encoding = encode_states(spec);
  FsmRun run;
  run.initial_state = spec.state_index(spec.initial);
  int state = run.initial_state;
  for (const auto& inputs : input_sequence) {
    FsmStep step;
    int next = fsm_next_state(spec, state, inputs);
    step.state_after = next;
    for (const auto& out : spec.outputs) {
      bool v = spec.is_mealy_output(out)
                   ? fsm_mealy_output(spec, encoding, state, inputs, out)
                   : fsm_moore_output(spec, next, out);
      step.outputs.emplace_back(out, v);
    }
    state = next;
    run.steps.push_back(std::move(step));
  }
  return run;
}

namespace {

bool reserved_identifier(const std::string& id) {
  if (id.empty() || id[0] == '_') return true;
  if (id == "CLK" || is_rail(id)) return true;
  if (id[0] == 'Q') {
    size_t start = id.compare(0, 4, "Qbar") == 0 ? 4 : 1;
    if (start < id.size() &&
        id.find_first_not_of("0123456789", start) == std::string::npos)
      return true;
  }
  return false;
}

std::string guard_to_string(const FsmSpec& spec, const FsmTransition& t) {
  if (t.guard.empty()) return "*";
  std::string s;
  for (const auto& lit : t.guard) {
    if (!s.empty()) s += " & ";
    s += spec.inputs[lit.input] + "=" + (lit.value ? "1" : "0");
  }
  return s;
}

} // namespace

std::vector<Diagnostic> check_fsm(const FsmSpec& spec) {
  std::vector<Diagnostic> diags;
  auto error = [&](std::string msg) {
    diags.push_back(make_error(std::move(msg), spec.name));
  };

  if (spec.states.empty()) {
    error("fsm has no states");
    return diags;
  }
  if (spec.inputs.size() > 12) {
    error("too many inputs for exhaustive checking (limit 12)");
    return diags;
  }

  std::set<std::string> seen;
  for (const auto& s : spec.states) {
    if (reserved_identifier(s.name)) error("reserved state name '" + s.name + "'");
    if (!seen.insert(s.name).second) error("duplicate state '" + s.name + "'");
  }
  seen.clear();
  for (const auto& i : spec.inputs) {
    if (reserved_identifier(i)) error("reserved input name '" + i + "'");
    if (!seen.insert(i).second) error("duplicate input '" + i + "'");
  }
  for (const auto& o : spec.outputs) {
    if (reserved_identifier(o)) error("reserved output name '" + o + "'");
    if (!seen.insert(o).second) error("duplicate output '" + o + "'");
  }

  if (spec.state_index(spec.initial) < 0)
    error("initial state '" + spec.initial + "' is not defined");

  bool refs_ok = true;
  for (const auto& t : spec.transitions) {
    if (t.from < 0 || t.from >= static_cast<int>(spec.states.size()) ||
        t.to < 0 || t.to >= static_cast<int>(spec.states.size())) {
      error("transition references an undefined state");
      refs_ok = false;
      continue;
    }
    std::set<int> vars;
    for (const auto& lit : t.guard) {
      if (lit.input < 0 || lit.input >= static_cast<int>(spec.inputs.size())) {
        error("guard references an undeclared input");
        refs_ok = false;
      } else if (!vars.insert(lit.input).second) {
        for (const auto& other : t.guard) {
          if (other.input == lit.input && other.value != lit.value) {
            error("guard of " + spec.states[t.from].name + " -> " +
                  spec.states[t.to].name + " contains contradictory literals");
            refs_ok = false;
            break;
          }
        }
      }
    }
  }

  // Output definitions: each declared output is Moore xor Mealy.
  for (const auto& out : spec.outputs) {
    bool moore = false;
    for (const auto& s : spec.states) {
      for (const auto& [name, value] : s.moore) {
        (void)value;
        if (name == out) moore = true;
      }
    }
    bool mealy = spec.is_mealy_output(out);
    if (moore && mealy)
      error("output '" + out + "' is assigned both per-state and by expression");
    if (!moore && !mealy)
      error("output '" + out + "' is never assigned");
  }
  for (const auto& s : spec.states) {
    for (const auto& [name, value] : s.moore) {
      (void)value;
      if (std::find(spec.outputs.begin(), spec.outputs.end(), name) ==
          spec.outputs.end())
        error("state '" + s.name + "' assigns undeclared output '" + name + "'");
    }
  }
  int bits = state_bit_count(spec);
  for (const auto& m : spec.mealy) {
    if (std::find(spec.outputs.begin(), spec.outputs.end(), m.name) ==
        spec.outputs.end())
      error("expression assigns undeclared output '" + m.name + "'");
    for (const auto& var : m.expr.variables()) {
      if (spec.input_index(var) >= 0) continue;
      bool bar = var.compare(0, 4, "Qbar") == 0;
      size_t start = bar ? 4 : (var.size() > 1 && var[0] == 'Q' ? 1 : 0);
      bool is_bit =
          start > 0 && start < var.size() &&
          var.find_first_not_of("0123456789", start) == std::string::npos &&
          std::stoi(var.substr(start)) < bits;
      if (!is_bit)
        error("expression for '" + m.name + "' references unknown variable '" +
              var + "'");
    }
  }

  if (!refs_ok || has_errors(diags)) return diags;

  // Determinism and completeness by exhaustive guard evaluation. One report
  // per state keeps the output readable.
  const uint32_t combos = 1u << spec.inputs.size();
  for (int s = 0; s < static_cast<int>(spec.states.size()); ++s) {
    bool reported = false;
    for (uint32_t row = 0; row < combos && !reported; ++row) {
      std::vector<bool> in(spec.inputs.size());
      for (size_t i = 0; i < spec.inputs.size(); ++i) in[i] = (row >> i) & 1u;
      int first = -1;
      for (size_t t = 0; t < spec.transitions.size() && !reported; ++t) {
        const auto& tr = spec.transitions[t];
        if (tr.from != s || !guard_matches(tr, in)) continue;
        if (first < 0) {
          first = static_cast<int>(t);
        } else {
          error("state '" + spec.states[s].name + "': transitions [" +
                guard_to_string(spec, spec.transitions[first]) + " -> " +
                spec.states[spec.transitions[first].to].name + "] and [" +
                guard_to_string(spec, tr) + " -> " + spec.states[tr.to].name +
                "] overlap");
          reported = true;
        }
      }
      if (first < 0 && !spec.implicit_self_loops && !reported) {
        std::string combo;
        for (size_t i = 0; i < spec.inputs.size(); ++i) {
          if (!combo.empty()) combo += " ";
          combo += spec.inputs[i] + "=" + (((row >> i) & 1u) ? "1" : "0");
        }
        if (combo.empty()) combo = "*";
        error("state '" + spec.states[s].name + "' has no transition for " +
              combo);
        reported = true;
      }
    }
  }

  return diags;
}

} // namespace fluidic
