#include "fluidic/serialize.hpp"

#include <algorithm>
#include <charconv>

namespace fluidic {

namespace {

// shortest round-trip representation
std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* dir_keyword(PortDir d) {
  switch (d) {
    case PortDir::In: return "in";
    case PortDir::Out: return "out";
    case PortDir::InOut: return "inout";
  }
  return "in";
}

const char* edge_keyword(EdgeMode e) {
  switch (e) {
    case EdgeMode::Rising: return "rising";
    case EdgeMode::Falling: return "falling";
    case EdgeMode::Both: return "both";
  }
  return "rising";
}

void emit_component(std::string& out, const Component& comp) {
  out += "  ";
  out += component_kind(comp.body);
  out += " " + comp.name;
  std::visit(
      [&out](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Valve>) {
          out += " gate=" + c.gate + " a=" + c.port_a + " b=" + c.port_b;
        } else if constexpr (std::is_same_v<T, Restriction>) {
          out += " a=" + c.port_a + " b=" + c.port_b + " r=" + fmt(c.resistance);
        } else if constexpr (std::is_same_v<T, Chamber>) {
          out += " node=" + c.node + " c=" + fmt(c.capacitance);
        } else if constexpr (std::is_same_v<T, Actuator>) {
          out += " node=" + c.node + " c=" + fmt(c.capacitance) +
                 " thresh=" + fmt(c.engage_threshold);
        } else if constexpr (std::is_same_v<T, Junction>) {
          out += " out=" + c.out + " in=";
          for (size_t i = 0; i < c.in.size(); ++i) {
            if (i) out += ",";
            out += c.in[i];
          }
        } else if constexpr (std::is_same_v<T, Instance>) {
          out += " of=" + c.cell;
          for (const auto& [formal, actual] : c.port_map)
            out += " " + formal + "=" + actual;
          if (c.edge) out += std::string(" edge=") + edge_keyword(*c.edge);
          if (c.swap_feedback) out += " swap=1";
        }
      },
      comp.body);
  // default layers stay implicit so hand-written and generated text agree
  if (comp.layer != default_layer(comp.body)) {
    out += std::string(" layer=") + layer_name(comp.layer);
  }
  out += "\n";
}

} // namespace

std::string serialize_fnl(const Netlist& netlist) {
  std::string out;
  if (!netlist.name.empty()) out += "netlist " + netlist.name + "\n";

  std::vector<const Cell*> cells;
  for (const auto& c : netlist.cells) cells.push_back(&c);
  std::sort(cells.begin(), cells.end(),
            [](const Cell* a, const Cell* b) { return a->id < b->id; });

  for (const Cell* cell : cells) {
    if (!out.empty() && out.back() != '\n') out += "\n";
    out += "cell " + cell->id + "\n";
    for (const auto& p : cell->ports)
      out += std::string("  ") + dir_keyword(p.dir) + " " + p.name + "\n";
    std::vector<std::string> nets = cell->nets;
    std::sort(nets.begin(), nets.end());
    if (!nets.empty()) {
      out += "  net";
      for (const auto& n : nets) out += " " + n;
      out += "\n";
    }
    std::vector<const Component*> comps;
    for (const auto& c : cell->components) comps.push_back(&c);
    std::sort(comps.begin(), comps.end(),
              [](const Component* a, const Component* b) {
                return a->name < b->name;
              });
    for (const Component* c : comps) emit_component(out, *c);
    out += "end\n";
  }

  if (!netlist.top.empty()) out += "top " + netlist.top + "\n";
  return out;
}

} // namespace fluidic
