#include <doctest.h>

#include "fluidic/error.hpp"
#include "fluidic/flatten.hpp"
#include "fluidic/library.hpp"
#include "fluidic/netlist.hpp"

#include "support/builders.hpp"

using namespace fluidic;

TEST_CASE("library NOT expands to one valve and one pull restriction") {
  Netlist flat = flatten({}, lib::kNot, FlattenDepth::Valve);
  CHECK(valve_count(flat) == 1);
  CHECK(restriction_count(flat) == 1);
  // ports preserved in order
  REQUIRE(flat.cells.size() == 1);
  REQUIRE(flat.cells[0].ports.size() == 2);
  CHECK(flat.cells[0].ports[0].name == "a");
  CHECK(flat.cells[0].ports[1].name == "y");
}

TEST_CASE("library cell valve costs match the expansion rules") {
  // Fixed costs: NOT=1, NAND_n=n, SR_LATCH=2x NAND_2, TFF=2x NAND_3 + latch.
  CHECK(valve_count(flatten({}, lib::kNand2, FlattenDepth::Valve)) == 2);
  CHECK(valve_count(flatten({}, lib::kNand3, FlattenDepth::Valve)) == 3);
  CHECK(valve_count(flatten({}, lib::kSrLatch, FlattenDepth::Valve)) == 4);
  CHECK(valve_count(flatten({}, lib::kTffStruct, FlattenDepth::Valve)) == 10);

  for (auto id : {lib::kNot, lib::kNand2, lib::kNand3, lib::kSrLatch,
                  lib::kTffStruct}) {
    CHECK(valve_count(flatten({}, id, FlattenDepth::Valve)) == lib::valve_cost(id));
  }
}

TEST_CASE("valve-level flatten leaves only primitives") {
  Netlist flat = flatten({}, lib::kTffStruct, FlattenDepth::Valve);
  for (const auto& comp : flat.cells[0].components) {
    CHECK(!std::holds_alternative<Instance>(comp.body));
  }
  // one pull per NAND gate: 2x NAND_3 + 2x latch NAND_2
  CHECK(restriction_count(flat) == 4);
}

TEST_CASE("gate-level flatten keeps NOT/NAND atomic and expands macros") {
  Netlist flat = flatten({}, lib::kTffStruct, FlattenDepth::Gate);
  int nand3 = 0, nand2 = 0, other = 0;
  for (const auto& comp : flat.cells[0].components) {
    const auto* inst = std::get_if<Instance>(&comp.body);
    REQUIRE(inst != nullptr);
    if (inst->cell == lib::kNand3) {
      ++nand3;
    } else if (inst->cell == lib::kNand2) {
      ++nand2;
    } else {
      ++other;
    }
  }
  CHECK(nand3 == 2);
  CHECK(nand2 == 2);
  CHECK(other == 0);
}

TEST_CASE("behavioral cells survive gate-level flatten and reject valve level") {
  Netlist nl;
  Cell top;
  top.id = "wrap";
  top.ports = {{"t", PortDir::In}, {"clk", PortDir::In}, {"q", PortDir::Out}};
  Instance inst;
  inst.cell = lib::kTffBehav;
  inst.edge = EdgeMode::Both;
  inst.port_map = {{"T", "t"}, {"CLK", "clk"}, {"Q", "q"}, {"Qbar", "qb"}};
  top.components.push_back({"u0", Layer::Control, std::move(inst)});
  nl.cells.push_back(top);
  nl.top = "wrap";

  Netlist gate = flatten(nl, "wrap", FlattenDepth::Gate);
  REQUIRE(gate.cells[0].components.size() == 1);
  const auto* kept = std::get_if<Instance>(&gate.cells[0].components[0].body);
  REQUIRE(kept != nullptr);
  CHECK(kept->cell == lib::kTffBehav);
  CHECK(kept->edge == EdgeMode::Both);

  CHECK_THROWS_AS(flatten(nl, "wrap", FlattenDepth::Valve), Error);
  try {
    flatten(nl, "wrap", FlattenDepth::Valve);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BehavioralAtValveLevel);
  }
}

TEST_CASE("flatten prefixes internal nets and preserves rails") {
  Netlist flat = flatten({}, lib::kTffStruct, FlattenDepth::Valve);
  bool saw_prefixed = false, saw_vac = false;
  for (const auto& comp : flat.cells[0].components) {
    for (const auto& n : comp.nets()) {
      if (n.find('/') != std::string::npos) saw_prefixed = true;
      if (n == kVacRail) saw_vac = true;
      CHECK(n != "s1"); // library-internal names must be path-qualified
    }
  }
  CHECK(saw_prefixed);
  CHECK(saw_vac);
}

TEST_CASE("flatten is idempotent") {
  Netlist once = flatten({}, lib::kTffStruct, FlattenDepth::Valve);
  Netlist twice = flatten(once, once.top, FlattenDepth::Valve);
  CHECK(structurally_equal(once, twice));

  Netlist gate_once = flatten({}, lib::kTffStruct, FlattenDepth::Gate);
  Netlist gate_twice = flatten(gate_once, gate_once.top, FlattenDepth::Gate);
  CHECK(structurally_equal(gate_once, gate_twice));
}

TEST_CASE("count additivity over instantiated library cells") {
  // wrap one of each structural cell and check the flattened total
  Netlist nl;
  Cell top;
  top.id = "combo";
  top.ports = {{"a", PortDir::In}, {"b", PortDir::In}, {"y1", PortDir::Out},
               {"y2", PortDir::Out}};
  auto add = [&top](const char* name, std::string_view cell,
                    std::vector<std::pair<std::string, std::string>> map) {
    top.components.push_back(
        {name, Layer::Control, Instance{std::string(cell), std::move(map), {}, false}});
  };
  add("u1", lib::kNot, {{"a", "a"}, {"y", "n1"}});
  add("u2", lib::kNand2, {{"a", "a"}, {"b", "b"}, {"y", "y1"}});
  add("u3", lib::kNand3, {{"a", "a"}, {"b", "b"}, {"c", "n1"}, {"y", "n2"}});
  add("u4", lib::kSrLatch, {{"nS", "n1"}, {"nR", "n2"}, {"Q", "y2"}, {"Qbar", "n3"}});
  add("u5", lib::kTffStruct, {{"T", "a"}, {"CLK", "b"}, {"Q", "n4"}, {"Qbar", "n5"}});
  nl.cells.push_back(top);
  nl.top = "combo";

  int expected = lib::valve_cost(lib::kNot) + lib::valve_cost(lib::kNand2) +
                 lib::valve_cost(lib::kNand3) + lib::valve_cost(lib::kSrLatch) +
                 lib::valve_cost(lib::kTffStruct);
  Netlist flat = flatten(nl, "combo", FlattenDepth::Valve);
  CHECK(valve_count(flat) == expected);
  CHECK(expected == 1 + 2 + 3 + 4 + 10);
}

TEST_CASE("validate: well-formed library cells are clean") {
  for (auto id : {lib::kNot, lib::kNand2, lib::kNand3, lib::kSrLatch,
                  lib::kTffStruct}) {
    Netlist nl;
    nl.cells.push_back(*lib::cell(id));
    nl.cells[0].id = "copy"; // avoid shadowing the library name
    CHECK(validate(nl).empty());
  }
}

TEST_CASE("validate: valve gate equal to a flow port") {
  Netlist nl;
  Cell c;
  c.id = "bad";
  c.components.push_back({"v1", Layer::Control, Valve{"a", "a", "ATM"}});
  nl.cells.push_back(c);
  auto diags = validate(nl);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message == "gate net equals flow port");
  CHECK(diags[0].path == "bad/v1");
}

TEST_CASE("validate: instance binding problems are named") {
  Netlist nl;
  Cell c;
  c.id = "wrap";
  Instance inst;
  inst.cell = std::string(lib::kNot);
  inst.port_map = {{"a", "x"}}; // y unbound
  c.components.push_back({"u0", Layer::Control, std::move(inst)});
  nl.cells.push_back(c);
  auto diags = validate(nl);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message == "unbound formal port 'y'");

  // unknown cell
  Netlist nl2;
  Cell c2;
  c2.id = "wrap";
  c2.components.push_back(
      {"u0", Layer::Control, Instance{"NO_SUCH_CELL", {}, {}, false}});
  nl2.cells.push_back(c2);
  auto diags2 = validate(nl2);
  REQUIRE(diags2.size() == 1);
  CHECK(diags2[0].message == "unknown cell 'NO_SUCH_CELL'");
}

TEST_CASE("validate: dangling declared net and recursive cells") {
  Netlist nl;
  Cell c;
  c.id = "lonely";
  c.nets = {"floating"};
  nl.cells.push_back(c);
  auto diags = validate(nl);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message == "dangling net 'floating'");

  Netlist rec;
  Cell a;
  a.id = "a";
  a.components.push_back({"u0", Layer::Control, Instance{"b", {}, {}, false}});
  Cell b;
  b.id = "b";
  b.components.push_back({"u0", Layer::Control, Instance{"a", {}, {}, false}});
  rec.cells = {a, b};
  bool found = false;
  for (const auto& d : validate(rec)) {
    if (d.message.find("recursive") != std::string::npos) found = true;
  }
  CHECK(found);
}

TEST_CASE("validate: resistance and capacitance must be positive") {
  Netlist nl;
  Cell c;
  c.id = "m";
  c.components.push_back({"r1", Layer::Flow, Restriction{"VAC", "n", 0.0}});
  c.components.push_back({"c1", Layer::Flow, Chamber{"n", -1e-9}});
  nl.cells.push_back(c);
  auto diags = validate(nl);
  CHECK(diags.size() == 2);
}

TEST_CASE("valve_count requires a flattened netlist") {
  Netlist nl;
  Cell c;
  c.id = "wrap";
  Instance inst;
  inst.cell = std::string(lib::kNot);
  inst.port_map = {{"a", "x"}, {"y", "y"}};
  c.components.push_back({"u0", Layer::Control, std::move(inst)});
  nl.cells.push_back(c);
  CHECK_THROWS_AS(valve_count(nl), Error);
  try {
    valve_count(nl);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotFlattened);
  }
}

TEST_CASE("flatten of an empty cell keeps ports") {
  Netlist nl;
  Cell c;
  c.id = "empty";
  c.ports = {{"p", PortDir::In}, {"q", PortDir::Out}};
  nl.cells.push_back(c);
  Netlist flat = flatten(nl, "empty", FlattenDepth::Valve);
  CHECK(flat.cells[0].components.empty());
  REQUIRE(flat.cells[0].ports.size() == 2);
  CHECK(flat.cells[0].ports[0].name == "p");
}
