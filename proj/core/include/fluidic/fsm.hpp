#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fluidic/diag.hpp"

namespace fluidic {

/// Boolean expression over FSM inputs and state bits (Q0.., Qbar0..), used
/// for Mealy outputs. Stored as a flat node pool.
struct BoolExpr {
  enum class Kind { Const, Var, Not, And, Or };
  struct Node {
    Kind kind = Kind::Const;
    bool cval = false;
    std::string var; // Kind::Var
    int a = -1, b = -1;
  };
  std::vector<Node> nodes;
  int root = -1;

  int add(Node n);
  static BoolExpr constant(bool v);
  static BoolExpr variable(std::string name);

  bool empty() const { return root < 0; }
  /// Variables referenced, in first-use order.
  std::vector<std::string> variables() const;
  template <typename Lookup> // bool(const std::string&)
  bool eval(Lookup&& lookup) const {
    return eval_node(root, lookup);
  }
  std::string to_string() const;

private:
  template <typename Lookup>
  bool eval_node(int i, Lookup&& lookup) const {
    const Node& n = nodes[i];
    switch (n.kind) {
      case Kind::Const: return n.cval;
      case Kind::Var: return lookup(n.var);
      case Kind::Not: return !eval_node(n.a, lookup);
      case Kind::And: return eval_node(n.a, lookup) && eval_node(n.b, lookup);
      case Kind::Or: return eval_node(n.a, lookup) || eval_node(n.b, lookup);
    }
    return false;
  }
};

struct InputLiteral {
  int input = 0; // index into FsmSpec::inputs
  bool value = false;
  bool operator==(const InputLiteral&) const = default;
};

/// Guard is a conjunction of input literals; empty guard always matches.
struct FsmTransition {
  int from = 0;
  std::vector<InputLiteral> guard;
  int to = 0;
  bool operator==(const FsmTransition&) const = default;
};

struct FsmState {
  std::string name;
  std::vector<std::pair<std::string, bool>> moore; // output name -> value
  bool operator==(const FsmState&) const = default;
};

struct MealyOutput {
  std::string name;
  BoolExpr expr;
};

struct FsmSpec {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<FsmState> states;
  std::string initial;
  std::vector<FsmTransition> transitions;
  std::vector<MealyOutput> mealy;
  /// When set, uncovered (state, input) combinations self-loop instead of
  /// failing the completeness check.
  bool implicit_self_loops = false;

  int state_index(std::string_view name) const;
  int input_index(std::string_view name) const;
  bool is_mealy_output(std::string_view name) const;
};

/// Exhaustively checks determinism, completeness, reference validity and
/// output definitions. Empty result means the spec is well formed.
std::vector<Diagnostic> check_fsm(const FsmSpec& spec);

/// ceil(log2(|states|)); 0 for a single state.
int state_bit_count(const FsmSpec& spec);

/// Deterministic state encoding: the initial state gets the all-zeros code,
/// the remaining states count up in declaration order.
std::vector<uint32_t> encode_states(const FsmSpec& spec);

/// Next state per the transition relation. `inputs` holds one value per
/// declared input. Precondition: check_fsm(spec) is clean.
int fsm_next_state(const FsmSpec& spec, int state, const std::vector<bool>& inputs);

/// Moore outputs of a state (unassigned outputs default to 0).
bool fsm_moore_output(const FsmSpec& spec, int state, std::string_view output);

/// Mealy output value for (state, inputs) under `encoding`.
bool fsm_mealy_output(const FsmSpec& spec, const std::vector<uint32_t>& encoding,
                      int state, const std::vector<bool>& inputs,
                      std::string_view output);

struct FsmStep {
  int state_after = 0;
  /// All declared outputs for this step: Mealy outputs are combinational in
  /// (pre-edge state, inputs); Moore outputs are sampled post-transition.
  std::vector<std::pair<std::string, bool>> outputs;
};

struct FsmRun {
  int initial_state = 0;
  std::vector<FsmStep> steps;
  std::vector<int> states() const; // initial + state_after per step
};

/// Reference interpreter: one transition per clock tick.
FsmRun interpret_fsm(const FsmSpec& spec,
                     const std::vector<std::vector<bool>>& input_sequence);

} // namespace fluidic
