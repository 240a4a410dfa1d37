#include "fluidic/library.hpp"

namespace fluidic::lib {

double default_pull_resistance() { return 1e9; }

namespace {

Component valve(std::string name, std::string gate, std::string a,
                std::string b) {
  Component c;
  c.name = std::move(name);
  c.layer = Layer::Control;
  c.body = Valve{std::move(gate), std::move(a), std::move(b)};
  return c;
}

Component pull(std::string net) {
  Component c;
  c.name = "pull";
  c.layer = Layer::Flow;
  c.body = Restriction{std::string(kVacRail), std::move(net),
                       default_pull_resistance()};
  return c;
}

Component inst(std::string name, std::string_view cell,
               std::vector<std::pair<std::string, std::string>> map) {
  Component c;
  c.name = std::move(name);
  c.layer = Layer::Control;
  c.body = Instance{std::string(cell), std::move(map), std::nullopt, false};
  return c;
}

// Output pulled to VAC through a fixed restriction; the valve vents it to
// ATM while the input holds a vacuum. One switch per gate input, one pull
// per gate.
Cell make_not() {
  Cell c;
  c.id = std::string(kNot);
  c.ports = {{"a", PortDir::In}, {"y", PortDir::Out}};
  c.components = {valve("v1", "a", "y", std::string(kAtmRail)), pull("y")};
  return c;
}

// Series valve stack from y to ATM: the output vents only when every input
// holds a vacuum.
Cell make_nand(int arity) {
  Cell c;
  c.id = "NAND_" + std::to_string(arity);
  static const char* input_names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int i = 0; i < arity; ++i) c.ports.push_back({input_names[i], PortDir::In});
  c.ports.push_back({"y", PortDir::Out});
  std::string prev = "y";
  for (int i = 0; i < arity; ++i) {
    std::string next =
        (i == arity - 1) ? std::string(kAtmRail) : "s" + std::to_string(i + 1);
    if (next != kAtmRail) c.nets.push_back(next);
    c.components.push_back(
        valve("v" + std::to_string(i + 1), input_names[i], prev, next));
    prev = next;
  }
  c.components.push_back(pull("y"));
  return c;
}

Cell make_sr_latch() {
  Cell c;
  c.id = std::string(kSrLatch);
  c.ports = {{"nS", PortDir::In},
             {"nR", PortDir::In},
             {"Q", PortDir::Out},
             {"Qbar", PortDir::Out}};
  c.components = {
      inst("u_q", kNand2, {{"a", "nS"}, {"b", "Qbar"}, {"y", "Q"}}),
      inst("u_qb", kNand2, {{"a", "nR"}, {"b", "Q"}, {"y", "Qbar"}}),
  };
  return c;
}

// Two three-input NANDs driving an SR latch. The default feedback routes
// Qbar into the set NAND and Q into the reset NAND, which is the toggling
// assignment; the swapped variant never toggles and exists for experiments.
Cell make_tff_struct(bool swap_feedback) {
  Cell c;
  c.id = std::string(kTffStruct);
  c.ports = {{"T", PortDir::In},
             {"CLK", PortDir::In},
             {"Q", PortDir::Out},
             {"Qbar", PortDir::Out}};
  c.nets = {"nS", "nR"};
  const std::string set_fb = swap_feedback ? "Q" : "Qbar";
  const std::string rst_fb = swap_feedback ? "Qbar" : "Q";
  c.components = {
      inst("u_ns", kNand3, {{"a", "T"}, {"b", "CLK"}, {"c", set_fb}, {"y", "nS"}}),
      inst("u_nr", kNand3, {{"a", "T"}, {"b", "CLK"}, {"c", rst_fb}, {"y", "nR"}}),
      inst("u_latch", kSrLatch,
           {{"nS", "nS"}, {"nR", "nR"}, {"Q", "Q"}, {"Qbar", "Qbar"}}),
  };
  return c;
}

Cell make_tff_behav() {
  Cell c;
  c.id = std::string(kTffBehav);
  c.ports = {{"T", PortDir::In},
             {"CLK", PortDir::In},
             {"Q", PortDir::Out},
             {"Qbar", PortDir::Out}};
  return c;
}

Cell make_jkff_behav() {
  Cell c;
  c.id = std::string(kJkffBehav);
  c.ports = {{"J", PortDir::In},
             {"K", PortDir::In},
             {"CLK", PortDir::In},
             {"Q", PortDir::Out},
             {"Qbar", PortDir::Out}};
  return c;
}

} // namespace

int nand_arity(std::string_view id) {
  if (id.size() != 6 || id.compare(0, 5, "NAND_") != 0) return 0;
  int n = id[5] - '0';
  return (n >= 2 && n <= kMaxNandArity) ? n : 0;
}

bool is_library_cell(std::string_view id) {
  return id == kNot || nand_arity(id) > 0 || id == kSrLatch ||
         id == kTffStruct || id == kTffBehav || id == kJkffBehav;
}

bool is_behavioral(std::string_view id) {
  return id == kTffBehav || id == kJkffBehav;
}

bool is_gate(std::string_view id) {
  return id == kNot || nand_arity(id) > 0;
}

int valve_cost(std::string_view id) {
  if (id == kNot) return 1;
  if (int n = nand_arity(id)) return n;
  if (id == kSrLatch) return 4;
  if (id == kTffStruct) return 10;
  return -1;
}

const Cell* cell(std::string_view id, bool swap_feedback) {
  static const Cell not_cell = make_not();
  static const std::vector<Cell> nands = [] {
    std::vector<Cell> cells;
    for (int n = 2; n <= kMaxNandArity; ++n) cells.push_back(make_nand(n));
    return cells;
  }();
  static const Cell sr_latch = make_sr_latch();
  static const Cell tff = make_tff_struct(false);
  static const Cell tff_swapped = make_tff_struct(true);
  static const Cell tff_behav = make_tff_behav();
  static const Cell jkff_behav = make_jkff_behav();

  if (id == kNot) return &not_cell;
  if (int n = nand_arity(id)) return &nands[n - 2];
  if (id == kSrLatch) return &sr_latch;
  if (id == kTffStruct) return swap_feedback ? &tff_swapped : &tff;
  if (id == kTffBehav) return &tff_behav;
  if (id == kJkffBehav) return &jkff_behav;
  return nullptr;
}

} // namespace fluidic::lib
