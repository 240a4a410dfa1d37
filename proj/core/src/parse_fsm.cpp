#include "fluidic/parse.hpp"
#include "lexer.hpp"

namespace fluidic {

namespace {

using detail::Line;
using detail::Token;

struct RawTransition {
  std::string from, to;
  std::vector<std::pair<std::string, bool>> guard;
  SourceSpan span;
};

struct FsmParser {
  std::vector<Diagnostic> diags;
  FsmSpec spec;
  std::vector<RawTransition> raw_transitions;
  SourceSpan header;

  void error(const Token& at, std::string msg) {
    diags.push_back(make_error_at(std::move(msg), at.span));
  }

  // expression grammar: or := and ('|' and)*, and := unary ('&' unary)*,
  // unary := '!' unary | '(' or ')' | ident | 0 | 1
  bool parse_expr(const Line& line, size_t& i, BoolExpr& expr, int& root) {
    return parse_or(line, i, expr, root);
  }

  bool parse_or(const Line& line, size_t& i, BoolExpr& e, int& root) {
    int lhs;
    if (!parse_and(line, i, e, lhs)) return false;
    while (i < line.tokens.size() && line.tokens[i].is_punct("|")) {
      ++i;
      int rhs;
      if (!parse_and(line, i, e, rhs)) return false;
      BoolExpr::Node n;
      n.kind = BoolExpr::Kind::Or;
      n.a = lhs;
      n.b = rhs;
      lhs = e.add(std::move(n));
    }
    root = lhs;
    return true;
  }

  bool parse_and(const Line& line, size_t& i, BoolExpr& e, int& root) {
    int lhs;
    if (!parse_unary(line, i, e, lhs)) return false;
    while (i < line.tokens.size() && line.tokens[i].is_punct("&")) {
      ++i;
      int rhs;
      if (!parse_unary(line, i, e, rhs)) return false;
      BoolExpr::Node n;
      n.kind = BoolExpr::Kind::And;
      n.a = lhs;
      n.b = rhs;
      lhs = e.add(std::move(n));
    }
    root = lhs;
    return true;
  }

  bool parse_unary(const Line& line, size_t& i, BoolExpr& e, int& root) {
    if (i >= line.tokens.size()) {
      error(line.tokens.back(), "expression ends unexpectedly");
      return false;
    }
    const Token& t = line.tokens[i];
    if (t.is_punct("!")) {
      ++i;
      int inner;
      if (!parse_unary(line, i, e, inner)) return false;
      BoolExpr::Node n;
      n.kind = BoolExpr::Kind::Not;
      n.a = inner;
      root = e.add(std::move(n));
      return true;
    }
    if (t.is_punct("(")) {
      ++i;
      if (!parse_or(line, i, e, root)) return false;
      if (i >= line.tokens.size() || !line.tokens[i].is_punct(")")) {
        error(t, "missing ')'");
        return false;
      }
      ++i;
      return true;
    }
    if (t.is_ident()) {
      BoolExpr::Node n;
      n.kind = BoolExpr::Kind::Var;
      n.var = t.text;
      root = e.add(std::move(n));
      ++i;
      return true;
    }
    if (t.is_number() && (t.number == 0.0 || t.number == 1.0)) {
      BoolExpr::Node n;
      n.kind = BoolExpr::Kind::Const;
      n.cval = t.number != 0.0;
      root = e.add(std::move(n));
      ++i;
      return true;
    }
    error(t, "expected variable, constant, '!' or '('");
    return false;
  }

  bool parse_bit(const Token& t, bool* out) {
    if (t.is_number() && (t.number == 0.0 || t.number == 1.0)) {
      *out = t.number != 0.0;
      return true;
    }
    error(t, "expected 0 or 1");
    return false;
  }

  void parse_line(const Line& line) {
    const Token& head = line.tokens.front();
    if (!head.is_ident()) {
      error(head, "expected a directive");
      return;
    }
    const std::string& dir = head.text;

    auto idents = [&](size_t from, std::vector<std::string>* out) {
      for (size_t i = from; i < line.tokens.size(); ++i) {
        if (!line.tokens[i].is_ident()) {
          error(line.tokens[i], "expected identifier");
          return false;
        }
        out->push_back(line.tokens[i].text);
      }
      if (out->empty()) {
        error(head, "'" + dir + "' expects at least one name");
        return false;
      }
      return true;
    };

    if (dir == "fsm") {
      std::vector<std::string> names;
      if (idents(1, &names) && names.size() == 1) {
        spec.name = names[0];
        header = head.span;
      } else if (names.size() > 1) {
        error(head, "fsm takes a single name");
      }
    } else if (dir == "input") {
      idents(1, &spec.inputs);
    } else if (dir == "output") {
      idents(1, &spec.outputs);
    } else if (dir == "state") {
      if (line.tokens.size() < 2 || !line.tokens[1].is_ident()) {
        error(head, "state expects a name");
        return;
      }
      FsmState st;
      st.name = line.tokens[1].text;
      size_t i = 2;
      while (i < line.tokens.size()) {
        const Token& key = line.tokens[i];
        if (!key.is_ident() || i + 2 >= line.tokens.size() ||
            !line.tokens[i + 1].is_punct("=")) {
          error(key, "expected output=0|1 assignment");
          return;
        }
        bool v = false;
        if (!parse_bit(line.tokens[i + 2], &v)) return;
        st.moore.emplace_back(key.text, v);
        i += 3;
      }
      spec.states.push_back(std::move(st));
    } else if (dir == "initial") {
      std::vector<std::string> names;
      if (idents(1, &names) && names.size() == 1) spec.initial = names[0];
    } else if (dir == "on") {
      // on STATE guard -> STATE ; guard is '*' or lit & lit & ...
      if (line.tokens.size() < 2 || !line.tokens[1].is_ident()) {
        error(head, "on expects a source state");
        return;
      }
      RawTransition rt;
      rt.from = line.tokens[1].text;
      rt.span = head.span;
      size_t i = 2;
      if (i < line.tokens.size() && line.tokens[i].is_punct("*")) {
        ++i;
      } else {
        while (i < line.tokens.size() && !line.tokens[i].is_punct("->")) {
          const Token& var = line.tokens[i];
          if (!var.is_ident() || i + 2 >= line.tokens.size() ||
              !line.tokens[i + 1].is_punct("=")) {
            error(var, "expected input=0|1 in guard");
            return;
          }
          bool v = false;
          if (!parse_bit(line.tokens[i + 2], &v)) return;
          rt.guard.emplace_back(var.text, v);
          i += 3;
          if (i < line.tokens.size() && line.tokens[i].is_punct("&")) ++i;
        }
      }
      if (i >= line.tokens.size() || !line.tokens[i].is_punct("->")) {
        error(head, "expected '->' in transition");
        return;
      }
      ++i;
      if (i + 1 != line.tokens.size() || !line.tokens[i].is_ident()) {
        error(head, "expected a target state after '->'");
        return;
      }
      rt.to = line.tokens[i].text;
      raw_transitions.push_back(std::move(rt));
    } else if (dir == "let") {
      if (line.tokens.size() < 3 || !line.tokens[1].is_ident() ||
          !line.tokens[2].is_punct("=")) {
        error(head, "let expects: let output = expression");
        return;
      }
      MealyOutput m;
      m.name = line.tokens[1].text;
      size_t i = 3;
      int root = -1;
      if (!parse_expr(line, i, m.expr, root)) return;
      if (i != line.tokens.size()) {
        error(line.tokens[i], "trailing tokens after expression");
        return;
      }
      m.expr.root = root;
      spec.mealy.push_back(std::move(m));
    } else if (dir == "options") {
      std::vector<std::string> names;
      if (!idents(1, &names)) return;
      for (const auto& o : names) {
        if (o == "implicit_self_loops") {
          spec.implicit_self_loops = true;
        } else {
          error(head, "unknown option '" + o + "'");
        }
      }
    } else {
      error(head, "unknown directive '" + dir + "'");
    }
  }
};

} // namespace

Parsed<FsmSpec> parse_fsm(std::string_view text, std::string_view filename) {
  FsmParser p;
  p.header = SourceSpan{std::string(filename), 1, 1, 1};
  auto lines = detail::tokenize(text, filename, p.diags);
  for (const auto& line : lines) p.parse_line(line);

  // Resolve state and input names now that everything is declared.
  for (const auto& rt : p.raw_transitions) {
    FsmTransition t;
    t.from = p.spec.state_index(rt.from);
    t.to = p.spec.state_index(rt.to);
    if (t.from < 0)
      p.diags.push_back(make_error_at("unknown state '" + rt.from + "'", rt.span));
    if (t.to < 0)
      p.diags.push_back(make_error_at("unknown state '" + rt.to + "'", rt.span));
    bool ok = t.from >= 0 && t.to >= 0;
    for (const auto& [name, value] : rt.guard) {
      int idx = p.spec.input_index(name);
      if (idx < 0) {
        p.diags.push_back(
            make_error_at("guard references undeclared input '" + name + "'",
                          rt.span));
        ok = false;
        continue;
      }
      t.guard.push_back({idx, value});
    }
    if (ok) p.spec.transitions.push_back(std::move(t));
  }

  if (p.spec.initial.empty() && !p.spec.states.empty())
    p.spec.initial = p.spec.states.front().name;

  if (!has_errors(p.diags) && !p.spec.states.empty()) {
    for (auto& d : check_fsm(p.spec)) {
      d.span = p.header;
      p.diags.push_back(std::move(d));
    }
  } else if (p.spec.states.empty() && !has_errors(p.diags)) {
    p.diags.push_back(make_error_at("fsm declares no states", p.header));
  }

  Parsed<FsmSpec> out;
  out.diags = std::move(p.diags);
  if (!has_errors(out.diags)) out.value = std::move(p.spec);
  return out;
}

} // namespace fluidic
