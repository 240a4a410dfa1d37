#include "fluidic/dot.hpp"

#include <set>

namespace fluidic {

namespace {

const char* shape_for(const ComponentBody& body) {
  if (std::holds_alternative<Valve>(body)) return "box";
  if (std::holds_alternative<Restriction>(body)) return "diamond";
  if (std::holds_alternative<Chamber>(body)) return "house";
  if (std::holds_alternative<Actuator>(body)) return "doublecircle";
  if (std::holds_alternative<Junction>(body)) return "point";
  return "box3d";
}

const char* color_for(Layer layer) {
  switch (layer) {
    case Layer::Flow: return "lightblue";
    case Layer::Control: return "orange";
    case Layer::Routing: return "gray";
  }
  return "white";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void emit_cell(std::string& out, const Cell& cell, const std::string& prefix,
               bool cluster) {
  std::string indent = cluster ? "    " : "  ";
  if (cluster) {
    out += "  subgraph cluster_" + cell.id + " {\n";
    out += indent + "label=" + quoted(cell.id) + ";\n";
  }

  // ATM is the ambient vent and stays implicit; every other net referenced
  // by a component becomes an ellipse node.
  std::set<std::string> nets;
  for (const auto& comp : cell.components) {
    for (const auto& n : comp.nets()) {
      if (n != kAtmRail) nets.insert(n);
    }
  }
  for (const auto& n : nets) {
    out += indent + quoted(prefix + "net:" + n) + " [label=" + quoted(n) +
           " shape=ellipse];\n";
  }
  for (const auto& comp : cell.components) {
    out += indent + quoted(prefix + comp.name) + " [label=" +
           quoted(std::string(component_kind(comp.body)) + " " + comp.name) +
           " shape=" + shape_for(comp.body) + " style=filled fillcolor=" +
           color_for(comp.layer) + "];\n";
    for (const auto& n : comp.nets()) {
      if (n == kAtmRail) continue;
      out += indent + quoted(prefix + comp.name) + " -- " +
             quoted(prefix + "net:" + n) + ";\n";
    }
  }
  if (cluster) out += "  }\n";
}

} // namespace

std::string write_dot(const Netlist& netlist) {
  std::string out = "graph " +
                    (netlist.name.empty() ? std::string("netlist")
                                          : netlist.name) +
                    " {\n";
  out += "  node [fontname=\"Helvetica\"];\n";
  bool cluster = netlist.cells.size() > 1;
  for (const auto& cell : netlist.cells)
    emit_cell(out, cell, cluster ? cell.id + "/" : "", cluster);
  out += "}\n";
  return out;
}

} // namespace fluidic
