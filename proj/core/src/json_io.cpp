#include "fluidic/json_io.hpp"

#include <json.hpp>

namespace fluidic {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* dir_name(PortDir d) {
  switch (d) {
    case PortDir::In: return "in";
    case PortDir::Out: return "out";
    case PortDir::InOut: return "inout";
  }
  return "in";
}

ordered_json component_json(const Component& comp) {
  ordered_json j;
  j["name"] = comp.name;
  j["kind"] = component_kind(comp.body);
  j["layer"] = layer_name(comp.layer);
  std::visit(
      [&j](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Valve>) {
          j["gate"] = c.gate;
          j["a"] = c.port_a;
          j["b"] = c.port_b;
        } else if constexpr (std::is_same_v<T, Restriction>) {
          j["a"] = c.port_a;
          j["b"] = c.port_b;
          j["resistance"] = c.resistance;
        } else if constexpr (std::is_same_v<T, Chamber>) {
          j["node"] = c.node;
          j["capacitance"] = c.capacitance;
        } else if constexpr (std::is_same_v<T, Actuator>) {
          j["node"] = c.node;
          j["capacitance"] = c.capacitance;
          j["engage_threshold"] = c.engage_threshold;
        } else if constexpr (std::is_same_v<T, Junction>) {
          j["out"] = c.out;
          j["in"] = c.in;
        } else if constexpr (std::is_same_v<T, Instance>) {
          j["cell"] = c.cell;
          ordered_json map;
          for (const auto& [formal, actual] : c.port_map) map[formal] = actual;
          j["ports"] = std::move(map);
          if (c.edge) {
            j["edge"] = *c.edge == EdgeMode::Rising
                            ? "rising"
                            : (*c.edge == EdgeMode::Falling ? "falling" : "both");
          }
          if (c.swap_feedback) j["swap_feedback"] = true;
        }
      },
      comp.body);
  return j;
}

} // namespace

std::string netlist_to_json(const Netlist& netlist) {
  ordered_json j;
  j["name"] = netlist.name;
  j["top"] = netlist.top;
  j["cells"] = ordered_json::array();
  for (const auto& cell : netlist.cells) {
    ordered_json c;
    c["id"] = cell.id;
    c["ports"] = ordered_json::array();
    for (const auto& p : cell.ports)
      c["ports"].push_back({{"name", p.name}, {"dir", dir_name(p.dir)}});
    c["nets"] = cell.nets;
    c["components"] = ordered_json::array();
    for (const auto& comp : cell.components)
      c["components"].push_back(component_json(comp));
    j["cells"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

std::string gait_report_to_json(const GaitReport& report) {
  ordered_json j;
  j["settle"] = report.settle;
  j["end_time"] = report.end_time;
  j["legs"] = ordered_json::array();
  for (int leg = 1; leg <= 6; ++leg) {
    ordered_json l;
    l["leg"] = leg;
    l["net"] = LegMap::leg_net(leg);
    l["engaged"] = ordered_json::array();
    for (const auto& iv : report.engagements[leg - 1])
      l["engaged"].push_back({iv.begin, iv.end});
    j["legs"].push_back(std::move(l));
  }
  j["phases"] = ordered_json::array();
  for (const auto& p : report.phases) {
    j["phases"].push_back({{"begin", p.begin},
                           {"end", p.end},
                           {"phase", phase_name(p.phase)}});
  }
  j["walk_command"] = ordered_json::array();
  for (const auto& iv : report.walk_command)
    j["walk_command"].push_back({iv.begin, iv.end});
  j["violations"] = report.violations;
  return j.dump(2) + "\n";
}

} // namespace fluidic
