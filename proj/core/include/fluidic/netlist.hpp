#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fluidic/diag.hpp"

namespace fluidic {

// Reserved rail nets. VAC is the vacuum power line, ATM the atmospheric
// vent ("active ground"). Both are implicitly declared in every netlist and
// are never renamed by flattening.
inline constexpr std::string_view kVacRail = "VAC";
inline constexpr std::string_view kAtmRail = "ATM";

inline bool is_rail(std::string_view net) {
  return net == kVacRail || net == kAtmRail;
}

/// Fabrication layer a component lives on. Metadata only; no geometry.
enum class Layer { Flow, Control, Routing };

enum class PortDir { In, Out, InOut };

enum class EdgeMode { Rising, Falling, Both };

/// Normally closed membrane valve: flow between port_a/port_b only while a
/// vacuum on the gate chamber holds the membrane open. Symmetric in a/b.
struct Valve {
  std::string gate;
  std::string port_a;
  std::string port_b;
  bool operator==(const Valve&) const = default;
};

/// Fixed flow resistance, Pa·s/m³.
struct Restriction {
  std::string port_a;
  std::string port_b;
  double resistance = 0.0;
  bool operator==(const Restriction&) const = default;
};

/// Added pneumatic capacitance on a node, m³/Pa.
struct Chamber {
  std::string node;
  double capacitance = 0.0;
  bool operator==(const Chamber&) const = default;
};

/// Vacuum actuator load: capacitance plus the gauge pressure at or below
/// which the actuator counts as engaged.
struct Actuator {
  std::string node;
  double capacitance = 0.0;
  double engage_threshold = 0.0;
  bool operator==(const Actuator&) const = default;
};

/// Ideal routing-layer junction: the output net follows the strongest vacuum
/// among the inputs (a lossless wired-OR). Contributes no switches.
struct Junction {
  std::string out;
  std::vector<std::string> in;
  bool operator==(const Junction&) const = default;
};

/// Instantiation of a user or library cell. port_map binds each formal port
/// of the referenced cell to an actual net, exactly once.
struct Instance {
  std::string cell;
  std::vector<std::pair<std::string, std::string>> port_map;
  /// Clock edge selection; behavioral flip-flops only.
  std::optional<EdgeMode> edge;
  /// TFF_STRUCT only: swap the Q/Qbar excitation feedback (Fig-level wiring
  /// is under-specified; the default toggles, the swapped variant holds).
  bool swap_feedback = false;

  const std::string* actual_for(std::string_view formal) const;
  bool operator==(const Instance&) const = default;
};

using ComponentBody =
    std::variant<Valve, Restriction, Chamber, Actuator, Junction, Instance>;

struct Component {
  std::string name;
  Layer layer = Layer::Flow;
  ComponentBody body;

  /// Every net this component touches (actual nets for instances).
  std::vector<std::string> nets() const;
  bool operator==(const Component&) const = default;
};

Layer default_layer(const ComponentBody& body);
const char* layer_name(Layer layer);
const char* component_kind(const ComponentBody& body);

struct Port {
  std::string name; // the port's net inside the cell is the port name itself
  PortDir dir = PortDir::In;
  bool operator==(const Port&) const = default;
};

struct Cell {
  std::string id;
  std::vector<Port> ports;          // external interface, order is semantic
  std::vector<std::string> nets;    // explicitly declared internal nets
  std::vector<Component> components;

  const Port* find_port(std::string_view name) const;
  const Component* find_component(std::string_view name) const;
  bool operator==(const Cell&) const = default;
};

/// A hierarchical circuit: cells in declaration order plus an optional
/// designated top. Treated as immutable once validated.
struct Netlist {
  std::string name;
  std::vector<Cell> cells;
  std::string top;

  Cell* find_cell(std::string_view id);
  const Cell* find_cell(std::string_view id) const;
  bool operator==(const Netlist&) const = default;
};

/// Checks every structural invariant; returns one diagnostic per violation
/// (empty means the netlist is well formed). Never throws.
std::vector<Diagnostic> validate(const Netlist& netlist);

/// Equality up to component and net declaration order (ports stay ordered).
bool structurally_equal(const Netlist& a, const Netlist& b);

} // namespace fluidic
