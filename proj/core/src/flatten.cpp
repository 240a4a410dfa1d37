#include "fluidic/flatten.hpp"

#include <map>

#include "fluidic/error.hpp"
#include "fluidic/library.hpp"

namespace fluidic {

namespace {

struct Flattener {
  const Netlist& source;
  FlattenDepth depth;
  Cell out;

  const Cell* resolve(const std::string& id, bool swap_feedback) const {
    if (const Cell* c = source.find_cell(id)) return c;
    if (const Cell* c = lib::cell(id, swap_feedback)) return c;
    throw Error(Errc::UnknownCell, "unknown cell '" + id + "'");
  }

  static std::string map_net(const std::string& net, const std::string& prefix,
                             const std::map<std::string, std::string>& binds) {
    if (is_rail(net)) return net;
    if (auto it = binds.find(net); it != binds.end()) return it->second;
    return prefix + net;
  }

  void expand(const Cell& cell, const std::string& prefix,
              const std::map<std::string, std::string>& binds) {
    for (const auto& comp : cell.components) {
      const auto* inst = std::get_if<Instance>(&comp.body);
      bool keep_atomic =
          inst && (lib::is_behavioral(inst->cell) ||
                   (depth == FlattenDepth::Gate && lib::is_gate(inst->cell)));
      if (inst && lib::is_behavioral(inst->cell) && depth == FlattenDepth::Valve)
        throw Error(Errc::BehavioralAtValveLevel,
                    "cannot expand behavioral cell '" + inst->cell +
                        "' at valve level (instance " + prefix + comp.name + ")");

      if (!inst || keep_atomic) {
        Component flat = comp;
        flat.name = prefix + comp.name;
        std::visit(
            [&](auto& c) {
              using T = std::decay_t<decltype(c)>;
              if constexpr (std::is_same_v<T, Valve>) {
                c.gate = map_net(c.gate, prefix, binds);
                c.port_a = map_net(c.port_a, prefix, binds);
                c.port_b = map_net(c.port_b, prefix, binds);
              } else if constexpr (std::is_same_v<T, Restriction>) {
                c.port_a = map_net(c.port_a, prefix, binds);
                c.port_b = map_net(c.port_b, prefix, binds);
              } else if constexpr (std::is_same_v<T, Chamber> ||
                                   std::is_same_v<T, Actuator>) {
                c.node = map_net(c.node, prefix, binds);
              } else if constexpr (std::is_same_v<T, Junction>) {
                c.out = map_net(c.out, prefix, binds);
                for (auto& n : c.in) n = map_net(n, prefix, binds);
              } else if constexpr (std::is_same_v<T, Instance>) {
                for (auto& [formal, actual] : c.port_map)
                  actual = map_net(actual, prefix, binds);
              }
            },
            flat.body);
        out.components.push_back(std::move(flat));
        continue;
      }

      const Cell* child = resolve(inst->cell, inst->swap_feedback);
      std::map<std::string, std::string> child_binds;
      for (const auto& p : child->ports) {
        const std::string* actual = inst->actual_for(p.name);
        // validate() guarantees complete bindings.
        child_binds[p.name] = map_net(*actual, prefix, binds);
      }
      expand(*child, prefix + comp.name + "/", child_binds);
    }
  }
};

} // namespace

Netlist flatten(const Netlist& netlist, std::string_view top,
                FlattenDepth depth) {
  auto diags = validate(netlist);
  if (has_errors(diags))
    throw Error(Errc::InvalidNetlist,
                "netlist fails validation: " + diags.front().to_string());

  std::string top_id(top);
  Flattener fl{netlist, depth, {}};
  const Cell* root = fl.resolve(top_id, false);

  fl.out.id = root->id;
  fl.out.ports = root->ports;

  if (lib::is_behavioral(root->id)) {
    if (depth == FlattenDepth::Valve)
      throw Error(Errc::BehavioralAtValveLevel,
                  "cannot expand behavioral cell '" + root->id +
                      "' at valve level");
    Instance self;
    self.cell = root->id;
    for (const auto& p : root->ports) self.port_map.emplace_back(p.name, p.name);
    fl.out.components.push_back({"u0", Layer::Control, std::move(self)});
  } else if (depth == FlattenDepth::Gate && lib::is_gate(root->id)) {
    Instance self;
    self.cell = root->id;
    for (const auto& p : root->ports) self.port_map.emplace_back(p.name, p.name);
    fl.out.components.push_back({"u0", Layer::Control, std::move(self)});
  } else {
    std::map<std::string, std::string> binds;
    for (const auto& p : root->ports) binds[p.name] = p.name;
    fl.expand(*root, "", binds);
  }

  Netlist result;
  result.name = netlist.name;
  result.top = root->id;
  result.cells.push_back(std::move(fl.out));
  return result;
}

namespace {

int count_components(const Netlist& netlist, bool valves) {
  int n = 0;
  for (const auto& cell : netlist.cells) {
    for (const auto& comp : cell.components) {
      if (std::holds_alternative<Instance>(comp.body))
        throw Error(Errc::NotFlattened,
                    "netlist still contains instance '" + cell.id + "/" +
                        comp.name + "'");
      if (valves ? std::holds_alternative<Valve>(comp.body)
                 : std::holds_alternative<Restriction>(comp.body))
        ++n;
    }
  }
  return n;
}

} // namespace

int valve_count(const Netlist& netlist) {
  return count_components(netlist, true);
}

int restriction_count(const Netlist& netlist) {
  return count_components(netlist, false);
}

std::string default_top(const Netlist& netlist) {
  if (!netlist.top.empty()) return netlist.top;
  if (netlist.find_cell("main")) return "main";
  if (netlist.cells.size() == 1) return netlist.cells.front().id;
  throw Error(Errc::InvalidArgument,
              "netlist has no top cell; use a 'top' directive");
}

} // namespace fluidic
