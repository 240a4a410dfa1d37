#include "fluidic/netlist.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fluidic/library.hpp"

namespace fluidic {

const std::string* Instance::actual_for(std::string_view formal) const {
  for (const auto& [f, a] : port_map) {
    if (f == formal) return &a;
  }
  return nullptr;
}

std::vector<std::string> Component::nets() const {
  std::vector<std::string> out;
  std::visit(
      [&out](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Valve>) {
          out = {c.gate, c.port_a, c.port_b};
        } else if constexpr (std::is_same_v<T, Restriction>) {
          out = {c.port_a, c.port_b};
        } else if constexpr (std::is_same_v<T, Chamber>) {
          out = {c.node};
        } else if constexpr (std::is_same_v<T, Actuator>) {
          out = {c.node};
        } else if constexpr (std::is_same_v<T, Junction>) {
          out.push_back(c.out);
          out.insert(out.end(), c.in.begin(), c.in.end());
        } else if constexpr (std::is_same_v<T, Instance>) {
          for (const auto& [formal, actual] : c.port_map) out.push_back(actual);
        }
      },
      body);
  return out;
}

Layer default_layer(const ComponentBody& body) {
  if (std::holds_alternative<Valve>(body)) return Layer::Control;
  if (std::holds_alternative<Actuator>(body)) return Layer::Routing;
  if (std::holds_alternative<Junction>(body)) return Layer::Routing;
  return Layer::Flow;
}

const char* layer_name(Layer layer) {
  switch (layer) {
    case Layer::Flow: return "flow";
    case Layer::Control: return "control";
    case Layer::Routing: return "routing";
  }
  return "flow";
}

const char* component_kind(const ComponentBody& body) {
  if (std::holds_alternative<Valve>(body)) return "valve";
  if (std::holds_alternative<Restriction>(body)) return "rest";
  if (std::holds_alternative<Chamber>(body)) return "cham";
  if (std::holds_alternative<Actuator>(body)) return "act";
  if (std::holds_alternative<Junction>(body)) return "junc";
  return "inst";
}

const Port* Cell::find_port(std::string_view name) const {
  for (const auto& p : ports) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Component* Cell::find_component(std::string_view name) const {
  for (const auto& c : components) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Cell* Netlist::find_cell(std::string_view id) {
  for (auto& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const Cell* Netlist::find_cell(std::string_view id) const {
  for (const auto& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

const Cell* resolve_cell(const Netlist& nl, std::string_view id) {
  if (const Cell* c = nl.find_cell(id)) return c;
  return lib::cell(id);
}

void validate_cell(const Netlist& nl, const Cell& cell,
                   std::vector<Diagnostic>& diags) {
  auto path = [&cell](const Component* comp) {
    return comp ? cell.id + "/" + comp->name : cell.id;
  };
  auto error = [&](const Component* comp, std::string msg) {
    diags.push_back(make_error(std::move(msg), path(comp)));
  };

  if (cell.id.empty()) error(nullptr, "cell has an empty id");

  std::set<std::string> port_names;
  for (const auto& p : cell.ports) {
    if (p.name.empty()) error(nullptr, "port has an empty name");
    if (p.name == kAtmRail)
      error(nullptr, "reserved rail ATM cannot be a port");
    if (!port_names.insert(p.name).second)
      error(nullptr, "duplicate port '" + p.name + "'");
  }

  std::set<std::string> declared;
  for (const auto& n : cell.nets) {
    if (n.empty()) error(nullptr, "net has an empty name");
    if (is_rail(n)) {
      error(nullptr, "rail '" + n + "' is implicitly declared");
      continue;
    }
    if (port_names.count(n))
      error(nullptr, "net '" + n + "' collides with a port");
    if (!declared.insert(n).second)
      error(nullptr, "duplicate net '" + n + "'");
  }

  std::set<std::string> comp_names;
  std::set<std::string> touched;
  for (const auto& comp : cell.components) {
    if (comp.name.empty()) error(&comp, "component has an empty name");
    if (!comp_names.insert(comp.name).second)
      error(&comp, "duplicate component '" + comp.name + "'");
    for (const auto& n : comp.nets()) {
      if (n.empty()) error(&comp, "empty net reference");
      touched.insert(n);
    }

    if (const auto* v = std::get_if<Valve>(&comp.body)) {
      if (v->gate == v->port_a || v->gate == v->port_b)
        error(&comp, "gate net equals flow port");
    } else if (const auto* r = std::get_if<Restriction>(&comp.body)) {
      if (!(r->resistance > 0.0))
        error(&comp, "restriction resistance must be > 0");
    } else if (const auto* ch = std::get_if<Chamber>(&comp.body)) {
      if (!(ch->capacitance > 0.0))
        error(&comp, "chamber capacitance must be > 0");
    } else if (const auto* a = std::get_if<Actuator>(&comp.body)) {
      if (!(a->capacitance > 0.0))
        error(&comp, "actuator capacitance must be > 0");
    } else if (const auto* j = std::get_if<Junction>(&comp.body)) {
      if (j->in.empty()) error(&comp, "junction has no inputs");
      if (is_rail(j->out)) error(&comp, "junction cannot drive a rail");
      for (const auto& n : j->in) {
        if (n == j->out) error(&comp, "junction output equals an input");
      }
    } else if (const auto* inst = std::get_if<Instance>(&comp.body)) {
      const Cell* target = resolve_cell(nl, inst->cell);
      if (!target) {
        error(&comp, "unknown cell '" + inst->cell + "'");
        continue;
      }
      std::set<std::string> bound;
      for (const auto& [formal, actual] : inst->port_map) {
        if (!target->find_port(formal)) {
          error(&comp, "no port '" + formal + "' on cell '" + inst->cell + "'");
          continue;
        }
        if (!bound.insert(formal).second)
          error(&comp, "port '" + formal + "' bound twice");
        if (is_rail(formal) && formal != actual)
          error(&comp, "rail port '" + formal + "' must bind the rail itself");
      }
      for (const auto& p : target->ports) {
        if (!bound.count(p.name))
          error(&comp, "unbound formal port '" + p.name + "'");
      }
      if (inst->edge && !lib::is_behavioral(inst->cell))
        error(&comp, "edge mode is only valid on behavioral flip-flops");
      if (inst->swap_feedback && inst->cell != lib::kTffStruct)
        error(&comp, "swap_feedback is only valid on TFF_STRUCT");
    }
  }

  // A declared net that touches nothing is dangling; ports may be unused.
  for (const auto& n : cell.nets) {
    if (!is_rail(n) && !touched.count(n) && !port_names.count(n))
      error(nullptr, "dangling net '" + n + "'");
  }
}

// Depth-first cycle check over user-cell instantiation edges.
bool find_cycle(const Netlist& nl, const std::string& id,
                std::map<std::string, int>& mark, std::string& cycle) {
  int& m = mark[id];
  if (m == 1) {
    cycle = id;
    return true;
  }
  if (m == 2) return false;
  m = 1;
  if (const Cell* c = nl.find_cell(id)) {
    for (const auto& comp : c->components) {
      if (const auto* inst = std::get_if<Instance>(&comp.body)) {
        if (nl.find_cell(inst->cell) &&
            find_cycle(nl, inst->cell, mark, cycle)) {
          if (!cycle.empty()) cycle = id + " -> " + cycle;
          return true;
        }
      }
    }
  }
  m = 2;
  return false;
}

} // namespace

std::vector<Diagnostic> validate(const Netlist& netlist) {
  std::vector<Diagnostic> diags;

  std::set<std::string> referenced;
  for (const auto& cell : netlist.cells) {
    for (const auto& comp : cell.components) {
      if (const auto* inst = std::get_if<Instance>(&comp.body))
        referenced.insert(inst->cell);
    }
  }

  std::set<std::string> ids;
  for (const auto& cell : netlist.cells) {
    if (!ids.insert(cell.id).second)
      diags.push_back(make_error("duplicate cell '" + cell.id + "'", cell.id));
    if (lib::is_library_cell(cell.id)) {
      // ambiguous only when something resolves the name; a flattened copy of
      // a library cell is otherwise harmless
      Diagnostic d =
          make_error("cell '" + cell.id + "' shadows a library cell", cell.id);
      if (!referenced.count(cell.id)) d.severity = Diagnostic::Severity::Warning;
      diags.push_back(std::move(d));
    }
  }

  for (const auto& cell : netlist.cells) validate_cell(netlist, cell, diags);

  if (!netlist.top.empty() && !netlist.find_cell(netlist.top) &&
      !lib::cell(netlist.top))
    diags.push_back(make_error("top cell '" + netlist.top + "' is not defined"));

  std::map<std::string, int> mark;
  for (const auto& cell : netlist.cells) {
    std::string cycle;
    if (find_cycle(netlist, cell.id, mark, cycle)) {
      diags.push_back(
          make_error("recursive cell instantiation: " + cycle, cell.id));
      break;
    }
  }

  return diags;
}

namespace {

Cell normalized(const Cell& cell) {
  Cell c = cell;
  std::sort(c.nets.begin(), c.nets.end());
  for (auto& comp : c.components) {
    if (auto* inst = std::get_if<Instance>(&comp.body))
      std::sort(inst->port_map.begin(), inst->port_map.end());
  }
  std::sort(c.components.begin(), c.components.end(),
            [](const Component& a, const Component& b) { return a.name < b.name; });
  return c;
}

} // namespace

bool structurally_equal(const Netlist& a, const Netlist& b) {
  if (a.cells.size() != b.cells.size() || a.top != b.top) return false;
  auto sorted_ids = [](const Netlist& nl) {
    std::vector<std::string> ids;
    for (const auto& c : nl.cells) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  if (sorted_ids(a) != sorted_ids(b)) return false;
  for (const auto& ca : a.cells) {
    const Cell* cb = b.find_cell(ca.id);
    if (!cb || !(normalized(ca) == normalized(*cb))) return false;
  }
  return true;
}

} // namespace fluidic
