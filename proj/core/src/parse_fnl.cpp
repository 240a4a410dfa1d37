#include <map>

#include "fluidic/library.hpp"
#include "fluidic/parse.hpp"
#include "lexer.hpp"

namespace fluidic {

namespace {

using detail::Line;
using detail::Token;

struct FnlParser {
  std::string_view filename;
  std::vector<Diagnostic> diags;
  Netlist netlist;
  size_t current = SIZE_MAX; // open cell block or the implicit main cell
  bool explicit_cell = false;
  bool saw_header = false;
  bool saw_top = false;
  std::map<std::string, SourceSpan> spans; // "cell" or "cell/comp" -> span

  void error(const Token& at, std::string msg) {
    diags.push_back(make_error_at(std::move(msg), at.span));
  }

  Cell& scope(const Token& at) {
    if (current != SIZE_MAX) return netlist.cells[current];
    // Bare declarations live in an implicit cell named "main".
    netlist.cells.push_back(Cell{"main", {}, {}, {}});
    current = netlist.cells.size() - 1;
    explicit_cell = false;
    spans.emplace("main", at.span);
    return netlist.cells[current];
  }

  // key=value arguments; values are single tokens or comma-joined ident lists.
  struct Arg {
    Token key;
    std::vector<Token> values;
  };

  bool parse_args(const Line& line, size_t from, std::vector<Arg>* out) {
    size_t i = from;
    while (i < line.tokens.size()) {
      const Token& key = line.tokens[i];
      if (!key.is_ident()) {
        error(key, "expected key=value argument");
        return false;
      }
      if (i + 1 >= line.tokens.size() || !line.tokens[i + 1].is_punct("=")) {
        error(key, "expected '=' after '" + key.text + "'");
        return false;
      }
      i += 2;
      Arg arg{key, {}};
      while (true) {
        if (i >= line.tokens.size()) {
          error(key, "missing value for '" + key.text + "'");
          return false;
        }
        const Token& v = line.tokens[i];
        if (!v.is_ident() && !v.is_number()) {
          error(v, "expected identifier or number");
          return false;
        }
        arg.values.push_back(v);
        ++i;
        if (i < line.tokens.size() && line.tokens[i].is_punct(","))
          ++i;
        else
          break;
      }
      out->push_back(std::move(arg));
    }
    return true;
  }

  const Arg* find_arg(const std::vector<Arg>& args, std::string_view key) {
    for (const auto& a : args) {
      if (a.key.text == key) return &a;
    }
    return nullptr;
  }

  bool single_ident(const Arg& a, std::string* out) {
    if (a.values.size() != 1 || !a.values[0].is_ident()) {
      error(a.key, "'" + a.key.text + "' expects one identifier");
      return false;
    }
    *out = a.values[0].text;
    return true;
  }

  bool single_number(const Arg& a, double* out) {
    if (a.values.size() != 1 || !a.values[0].is_number()) {
      error(a.key, "'" + a.key.text + "' expects a number");
      return false;
    }
    *out = a.values[0].si();
    return true;
  }

  bool check_keys(const std::vector<Arg>& args,
                  std::initializer_list<std::string_view> allowed) {
    bool ok = true;
    std::map<std::string, int> seen;
    for (const auto& a : args) {
      if (++seen[a.key.text] > 1) {
        error(a.key, "duplicate key '" + a.key.text + "'");
        ok = false;
      }
      bool known = false;
      for (auto k : allowed)
        if (a.key.text == k) known = true;
      if (!known) {
        error(a.key, "unknown key '" + a.key.text + "'");
        ok = false;
      }
    }
    return ok;
  }

  std::optional<Layer> parse_layer(const std::vector<Arg>& args) {
    const Arg* a = find_arg(args, "layer");
    if (!a) return std::nullopt;
    std::string v;
    if (!single_ident(*a, &v)) return std::nullopt;
    if (v == "flow") return Layer::Flow;
    if (v == "control") return Layer::Control;
    if (v == "routing") return Layer::Routing;
    error(a->key, "layer must be flow, control or routing");
    return std::nullopt;
  }

  void add_component(const Line& line, const Token& kind, const Token& name) {
    std::vector<Arg> args;
    if (!parse_args(line, 2, &args)) return;

    Component comp;
    comp.name = name.text;
    bool ok = true;

    if (kind.text == "valve") {
      ok = check_keys(args, {"gate", "a", "b", "layer"});
      Valve v;
      for (auto [key, field] :
           {std::pair{"gate", &v.gate}, {"a", &v.port_a}, {"b", &v.port_b}}) {
        const Arg* a = find_arg(args, key);
        if (!a) {
          error(kind, std::string("valve needs ") + key + "=");
          ok = false;
        } else if (!single_ident(*a, field)) {
          ok = false;
        }
      }
      comp.body = std::move(v);
    } else if (kind.text == "rest") {
      ok = check_keys(args, {"a", "b", "r", "layer"});
      Restriction r;
      for (auto [key, field] : {std::pair{"a", &r.port_a}, {"b", &r.port_b}}) {
        const Arg* a = find_arg(args, key);
        if (!a) {
          error(kind, std::string("rest needs ") + key + "=");
          ok = false;
        } else if (!single_ident(*a, field)) {
          ok = false;
        }
      }
      if (const Arg* a = find_arg(args, "r")) {
        ok = single_number(*a, &r.resistance) && ok;
      } else {
        error(kind, "rest needs r=");
        ok = false;
      }
      comp.body = std::move(r);
    } else if (kind.text == "cham" || kind.text == "act") {
      bool actuator = kind.text == "act";
      ok = actuator ? check_keys(args, {"node", "c", "thresh", "layer"})
                    : check_keys(args, {"node", "c", "layer"});
      std::string node;
      double cap = 0.0;
      if (const Arg* a = find_arg(args, "node")) {
        ok = single_ident(*a, &node) && ok;
      } else {
        error(kind, kind.text + " needs node=");
        ok = false;
      }
      if (const Arg* a = find_arg(args, "c")) {
        ok = single_number(*a, &cap) && ok;
      } else {
        error(kind, kind.text + " needs c=");
        ok = false;
      }
      if (actuator) {
        Actuator act;
        act.node = std::move(node);
        act.capacitance = cap;
        if (const Arg* a = find_arg(args, "thresh")) {
          ok = single_number(*a, &act.engage_threshold) && ok;
        } else {
          error(kind, "act needs thresh=");
          ok = false;
        }
        comp.body = std::move(act);
      } else {
        comp.body = Chamber{std::move(node), cap};
      }
    } else if (kind.text == "junc") {
      ok = check_keys(args, {"out", "in", "layer"});
      Junction j;
      if (const Arg* a = find_arg(args, "out")) {
        ok = single_ident(*a, &j.out) && ok;
      } else {
        error(kind, "junc needs out=");
        ok = false;
      }
      if (const Arg* a = find_arg(args, "in")) {
        for (const auto& v : a->values) {
          if (!v.is_ident()) {
            error(v, "junction inputs must be net names");
            ok = false;
          } else {
            j.in.push_back(v.text);
          }
        }
      } else {
        error(kind, "junc needs in=");
        ok = false;
      }
      comp.body = std::move(j);
    } else { // inst
      Instance inst;
      const Arg* of = find_arg(args, "of");
      if (!of || !single_ident(*of, &inst.cell)) {
        if (!of) error(kind, "inst needs of=");
        ok = false;
      }
      std::map<std::string, int> seen;
      for (const auto& a : args) {
        const std::string& key = a.key.text;
        if (++seen[key] > 1) {
          error(a.key, "duplicate key '" + key + "'");
          ok = false;
          continue;
        }
        if (key == "of" || key == "layer") continue;
        if (key == "edge") {
          std::string v;
          if (!single_ident(a, &v)) {
            ok = false;
          } else if (v == "rising") {
            inst.edge = EdgeMode::Rising;
          } else if (v == "falling") {
            inst.edge = EdgeMode::Falling;
          } else if (v == "both") {
            inst.edge = EdgeMode::Both;
          } else {
            error(a.key, "edge must be rising, falling or both");
            ok = false;
          }
          continue;
        }
        if (key == "swap") {
          double v = 0;
          if (!single_number(a, &v)) {
            ok = false;
          } else {
            inst.swap_feedback = v != 0.0;
          }
          continue;
        }
        std::string actual;
        if (!single_ident(a, &actual)) {
          ok = false;
          continue;
        }
        inst.port_map.emplace_back(key, actual);
      }
      comp.body = std::move(inst);
    }

    if (!ok) return;
    Cell& cell = scope(kind);
    auto layer = parse_layer(args);
    comp.layer = layer.value_or(default_layer(comp.body));
    spans.emplace(cell.id + "/" + comp.name, name.span);
    cell.components.push_back(std::move(comp));
  }

  void parse_line(const Line& line) {
    const Token& head = line.tokens.front();
    if (!head.is_ident()) {
      error(head, "expected a directive");
      return;
    }
    const std::string& dir = head.text;
    auto need_idents = [&](size_t from) {
      std::vector<const Token*> out;
      for (size_t i = from; i < line.tokens.size(); ++i) {
        if (!line.tokens[i].is_ident()) {
          error(line.tokens[i], "expected identifier");
          return std::vector<const Token*>{};
        }
        out.push_back(&line.tokens[i]);
      }
      if (out.empty()) error(head, "'" + dir + "' expects at least one name");
      return out;
    };

    if (dir == "netlist") {
      if (saw_header) {
        error(head, "duplicate netlist header");
        return;
      }
      auto names = need_idents(1);
      if (names.size() == 1) {
        netlist.name = names[0]->text;
        saw_header = true;
      } else if (names.size() > 1) {
        error(*names[1], "netlist takes a single name");
      }
    } else if (dir == "cell") {
      if (current != SIZE_MAX && explicit_cell) {
        error(head, "missing 'end' before new cell");
        return;
      }
      auto names = need_idents(1);
      if (names.size() != 1) return;
      netlist.cells.push_back(Cell{names[0]->text, {}, {}, {}});
      current = netlist.cells.size() - 1;
      explicit_cell = true;
      spans.emplace(names[0]->text, names[0]->span);
    } else if (dir == "end") {
      if (current == SIZE_MAX || !explicit_cell) {
        error(head, "'end' without an open cell");
        return;
      }
      current = SIZE_MAX;
      explicit_cell = false;
    } else if (dir == "top") {
      auto names = need_idents(1);
      if (names.size() != 1) return;
      if (saw_top) {
        error(head, "duplicate top directive");
        return;
      }
      netlist.top = names[0]->text;
      saw_top = true;
    } else if (dir == "in" || dir == "out" || dir == "inout") {
      PortDir pd = dir == "in" ? PortDir::In
                               : (dir == "out" ? PortDir::Out : PortDir::InOut);
      for (const Token* t : need_idents(1))
        scope(head).ports.push_back({t->text, pd});
    } else if (dir == "net") {
      for (const Token* t : need_idents(1)) scope(head).nets.push_back(t->text);
    } else if (dir == "valve" || dir == "rest" || dir == "cham" ||
               dir == "act" || dir == "junc" || dir == "inst") {
      if (line.tokens.size() < 2 || !line.tokens[1].is_ident()) {
        error(head, "'" + dir + "' expects a component name");
        return;
      }
      add_component(line, head, line.tokens[1]);
    } else {
      error(head, "unknown directive '" + dir + "'");
    }
  }
};

} // namespace

Parsed<Netlist> parse_fnl(std::string_view text, std::string_view filename) {
  FnlParser p;
  p.filename = filename;
  auto lines = detail::tokenize(text, filename, p.diags);

  for (const auto& line : lines) p.parse_line(line);
  if (p.explicit_cell)
    p.diags.push_back(make_error_at(
        "missing 'end' at end of file",
        SourceSpan{std::string(filename), std::max(1, lines.empty() ? 1 : lines.back().number), 1, 1}));

  if (!has_errors(p.diags)) {
    for (auto& d : validate(p.netlist)) {
      if (auto it = p.spans.find(d.path); it != p.spans.end())
        d.span = it->second;
      else if (!lines.empty())
        d.span = SourceSpan{std::string(filename), 1, 1, 1};
      p.diags.push_back(std::move(d));
    }
  }

  Parsed<Netlist> out;
  out.diags = std::move(p.diags);
  if (!has_errors(out.diags)) out.value = std::move(p.netlist);
  return out;
}

} // namespace fluidic
