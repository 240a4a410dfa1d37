#include <doctest.h>

#include <random>

#include "fluidic/flatten.hpp"
#include "fluidic/library.hpp"
#include "fluidic/parse.hpp"
#include "fluidic/serialize.hpp"

#include "support/builders.hpp"
#include "support/printers.hpp"

using namespace fluidic;

TEST_CASE("parse_fnl: the canonical one-valve inverter") {
  auto parsed = parse_fnl(
      "valve v1 gate=a a=y b=ATM\n"
      "rest r1 a=VAC b=y r=1e9\n");
  REQUIRE(parsed.ok());
  const Netlist& nl = *parsed.value;
  REQUIRE(nl.cells.size() == 1);
  CHECK(nl.cells[0].id == "main");
  REQUIRE(nl.cells[0].components.size() == 2);

  // structurally the library NOT: same components modulo names/ports
  const auto* v = std::get_if<Valve>(&nl.cells[0].components[0].body);
  REQUIRE(v != nullptr);
  CHECK(v->gate == "a");
  CHECK(v->port_a == "y");
  CHECK(v->port_b == "ATM");
  const auto* r = std::get_if<Restriction>(&nl.cells[0].components[1].body);
  REQUIRE(r != nullptr);
  CHECK(r->resistance == 1e9);

  const Cell* lib_not = lib::cell(lib::kNot);
  const auto* lv = std::get_if<Valve>(&lib_not->components[0].body);
  const auto* lr = std::get_if<Restriction>(&lib_not->components[1].body);
  CHECK(lv->gate == v->gate);
  CHECK(lv->port_a == v->port_a);
  CHECK(lv->port_b == v->port_b);
  CHECK(lr->resistance == r->resistance);
}

TEST_CASE("parse_fnl: empty file and comments") {
  auto parsed = parse_fnl("");
  REQUIRE(parsed.ok());
  CHECK(parsed.value->cells.empty());

  auto commented = parse_fnl("# nothing here\n\n  # more\n");
  REQUIRE(commented.ok());
  CHECK(commented.value->cells.empty());
}

TEST_CASE("parse_fnl: semantic error carries the component span") {
  auto parsed = parse_fnl("valve v1 gate=a a=a b=ATM\n", "bad.fnl");
  CHECK(!parsed.ok());
  REQUIRE(!parsed.diags.empty());
  const Diagnostic& d = parsed.diags.front();
  CHECK(d.message == "gate net equals flow port");
  REQUIRE(d.span.has_value());
  CHECK(d.span->file == "bad.fnl");
  CHECK(d.span->line == 1);
}

TEST_CASE("parse_fnl: syntax problems point at the offending token") {
  for (const char* text : {
           "valve v1 gate=a a=y\n",       // missing b=
           "bogus v1 a=b\n",              // unknown directive
           "valve v1 gate a=y b=ATM\n",   // missing '='
           "rest r1 a=VAC b=y r=oops\n",  // number expected
           "cell\n",                      // missing name
           "end\n",                       // end without cell
           "inst u1 a=b\n",               // missing of=
           "valve v1 gate=a a=y b=ATM layer=banana\n",
       }) {
    auto parsed = parse_fnl(text, "t.fnl");
    CHECK(!parsed.ok());
    REQUIRE(!parsed.diags.empty());
    CHECK(parsed.diags.front().span.has_value());
    CHECK(parsed.diags.front().span->line >= 1);
  }
}

TEST_CASE("parse_fnl: cells, instances, junctions, hierarchy") {
  const char* text =
      "netlist demo\n"
      "cell wrapper\n"
      "  in a\n"
      "  out y z\n"
      "  inst u0 of=NOT a=a y=n1\n"
      "  inst u1 of=TFF_BEHAV T=n1 CLK=a Q=y Qbar=qb edge=both\n"
      "  junc j0 out=z in=n1,qb\n"
      "  cham c0 node=n1 c=5e-10\n"
      "  act m0 node=z c=1e-9 thresh=-40kPa\n"
      "end\n"
      "top wrapper\n";
  auto parsed = parse_fnl(text);
  REQUIRE(parsed.ok());
  const Netlist& nl = *parsed.value;
  CHECK(nl.name == "demo");
  CHECK(nl.top == "wrapper");
  const Cell* c = nl.find_cell("wrapper");
  REQUIRE(c != nullptr);
  CHECK(c->ports.size() == 3);
  const Component* ff = c->find_component("u1");
  REQUIRE(ff != nullptr);
  const auto* inst = std::get_if<Instance>(&ff->body);
  CHECK(inst->edge == EdgeMode::Both);
  const auto* act = std::get_if<Actuator>(&c->find_component("m0")->body);
  CHECK(act->engage_threshold == -40e3);
  const auto* j = std::get_if<Junction>(&c->find_component("j0")->body);
  CHECK(j->in == std::vector<std::string>{"n1", "qb"});
}

TEST_CASE("serialize_fnl round trip is canonical and stable") {
  const char* text =
      "cell inv\n"
      "  in a\n"
      "  out y\n"
      "  rest pull a=VAC b=y r=1e9\n"
      "  valve v1 gate=a a=y b=ATM\n"
      "end\n"
      "top inv\n";
  auto parsed = parse_fnl(text);
  REQUIRE(parsed.ok());
  std::string canon = serialize_fnl(*parsed.value);
  auto reparsed = parse_fnl(canon);
  REQUIRE(reparsed.ok());
  CHECK(structurally_equal(*parsed.value, *reparsed.value));
  // serializing the reparse reproduces the canonical text byte for byte
  CHECK(serialize_fnl(*reparsed.value) == canon);
}

TEST_CASE("serialize_fnl handles flattened hierarchical names") {
  Netlist flat = flatten({}, lib::kTffStruct, FlattenDepth::Valve);
  std::string text = serialize_fnl(flat);
  auto reparsed = parse_fnl(text);
  REQUIRE(reparsed.ok());
  CHECK(valve_count(*reparsed.value) == 10);
  CHECK(structurally_equal(flat, *reparsed.value));
}

TEST_CASE("round trip on randomly generated netlists") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_real_distribution<double> rval(1e3, 1e12);

  for (int round = 0; round < 50; ++round) {
    Cell cell;
    cell.id = "c" + std::to_string(round);
    cell.ports = {{"p0", PortDir::In}, {"p1", PortDir::Out}};
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::string a = "n" + std::to_string(i);
      std::string b = "n" + std::to_string(i + 1);
      switch (kind(rng)) {
        case 0:
          cell.components.push_back(
              {"v" + std::to_string(i), Layer::Control, Valve{"p0", a, b}});
          break;
        case 1:
          cell.components.push_back({"r" + std::to_string(i), Layer::Flow,
                                     Restriction{a, b, rval(rng)}});
          break;
        case 2:
          cell.components.push_back(
              {"ch" + std::to_string(i), Layer::Flow, Chamber{a, rval(rng) * 1e-20}});
          break;
        case 3:
          cell.components.push_back({"j" + std::to_string(i), Layer::Routing,
                                     Junction{"jo" + std::to_string(i), {a, "p0"}}});
          break;
        default:
          cell.components.push_back(testutil::make_inst(
              "u" + std::to_string(i), "NOT", {{"a", a}, {"y", "w" + std::to_string(i)}}));
      }
    }
    Netlist nl;
    nl.name = "rt";
    nl.top = cell.id;
    nl.cells.push_back(std::move(cell));

    std::string text = serialize_fnl(nl);
    auto reparsed = parse_fnl(text);
    REQUIRE(reparsed.ok());
    CHECK(structurally_equal(nl, *reparsed.value));
    CHECK(serialize_fnl(*reparsed.value) == text);
  }
}

TEST_CASE("round trip on randomly generated FSM and stimulus ASTs") {
  std::mt19937 rng(23);
  for (int round = 0; round < 40; ++round) {
    FsmSpec spec = testutil::random_fsm(rng);
    auto reparsed = parse_fsm(testutil::print_fsm(spec));
    REQUIRE(reparsed.ok());
    const FsmSpec& back = *reparsed.value;
    CHECK(back.inputs == spec.inputs);
    CHECK(back.outputs == spec.outputs);
    CHECK(back.states == spec.states);
    CHECK(back.initial == spec.initial);
    CHECK(back.transitions == spec.transitions);
    REQUIRE(back.mealy.size() == spec.mealy.size());
    for (size_t i = 0; i < back.mealy.size(); ++i) {
      CHECK(back.mealy[i].name == spec.mealy[i].name);
      CHECK(back.mealy[i].expr.to_string() == spec.mealy[i].expr.to_string());
    }
  }

  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_real_distribution<double> when(0.0, 100.0);
  for (int round = 0; round < 40; ++round) {
    Stimulus stim;
    stim.timescale = 1e-3;
    int n = count(rng);
    double t = 0;
    for (int i = 0; i < n; ++i) {
      t += when(rng);
      stim.events.push_back({t, "n" + std::to_string(i % 3),
                             i % 2 ? LogicLevel::L1 : LogicLevel::L0});
    }
    if (round % 2) {
      stim.clocks.push_back({"clk", 10.0 + when(rng), 0.25, when(rng),
                             LogicLevel::L0});
    }
    stim.inits.push_back({"q", LogicLevel::L1});
    stim.end_time = t + 100;
    auto reparsed = parse_stim(testutil::print_stim(stim));
    REQUIRE(reparsed.ok());
    CHECK(reparsed.value->events == stim.events);
    CHECK(reparsed.value->clocks == stim.clocks);
    CHECK(reparsed.value->inits == stim.inits);
    CHECK(reparsed.value->end_time == doctest::Approx(stim.end_time));
  }
}

TEST_CASE("parse_fsm: the bundled machine shape") {
  const char* text =
      "fsm hexapod\n"
      "input x\n"
      "output walk\n"
      "state GRASP\n"
      "state WALK\n"
      "initial GRASP\n"
      "on GRASP x=1 -> WALK\n"
      "on GRASP x=0 -> GRASP\n"
      "on WALK x=1 -> GRASP\n"
      "on WALK x=0 -> WALK\n"
      "let walk = Q0\n";
  auto parsed = parse_fsm(text);
  REQUIRE(parsed.ok());
  const FsmSpec& spec = *parsed.value;
  CHECK(spec.states.size() == 2);
  CHECK(spec.initial == "GRASP");
  CHECK(spec.transitions.size() == 4);
  CHECK(state_bit_count(spec) == 1);
}

TEST_CASE("parse_fsm: degenerate single state") {
  auto parsed = parse_fsm(
      "fsm tiny\n"
      "output o\n"
      "state ONLY o=1\n"
      "on ONLY * -> ONLY\n");
  REQUIRE(parsed.ok());
  CHECK(parsed.value->states.size() == 1);
  CHECK(parsed.value->initial == "ONLY"); // defaults to the first state
}

TEST_CASE("parse_fsm: overlap and incompleteness are reported") {
  auto dup = parse_fsm(
      "fsm f\ninput x\noutput o\nstate A o=1\nstate B\ninitial A\n"
      "on A x=1 -> B\n"
      "on A x=1 -> A\n"
      "on A x=0 -> A\n"
      "on B * -> B\n");
  CHECK(!dup.ok());
  bool overlap = false;
  for (const auto& d : dup.diags) {
    if (d.message.find("overlap") != std::string::npos) overlap = true;
  }
  CHECK(overlap);

  auto incomplete = parse_fsm(
      "fsm f\ninput x\noutput o\nstate A o=1\ninitial A\n"
      "on A x=1 -> A\n");
  CHECK(!incomplete.ok());
  bool missing = false;
  for (const auto& d : incomplete.diags) {
    if (d.message.find("no transition for x=0") != std::string::npos)
      missing = true;
  }
  CHECK(missing);

  // the implicit self-loop option fills the gap
  auto with_opt = parse_fsm(
      "fsm f\ninput x\noutput o\nstate A o=1\ninitial A\n"
      "options implicit_self_loops\n"
      "on A x=1 -> A\n");
  CHECK(with_opt.ok());
}

TEST_CASE("parse_fsm: reserved identifiers and bad expressions") {
  CHECK(!parse_fsm("fsm f\ninput CLK\noutput o\nstate A o=1\non A * -> A\n").ok());
  CHECK(!parse_fsm("fsm f\ninput Q0\noutput o\nstate A o=1\non A * -> A\n").ok());
  CHECK(!parse_fsm("fsm f\ninput _x\noutput o\nstate A o=1\non A * -> A\n").ok());
  CHECK(!parse_fsm("fsm f\noutput o\nstate A\non A * -> A\nlet o = (x\n").ok());
  CHECK(!parse_fsm("fsm f\noutput o\nstate A\non A * -> A\nlet o = nosuch\n").ok());
}

TEST_CASE("parse_stim: events, clocks and inits") {
  const char* text =
      "timescale 1ms\n"
      "init Q=0\n"
      "clock clk period=6 duty=0.5\n"
      "@0 x=0\n"
      "@10 x=1\n"
      "end 100\n";
  auto parsed = parse_stim(text);
  REQUIRE(parsed.ok());
  const Stimulus& stim = *parsed.value;
  CHECK(stim.timescale == 1e-3);
  CHECK(stim.events.size() == 2);
  CHECK(stim.clocks.size() == 1);
  CHECK(stim.inits.size() == 1);
  CHECK(stim.end_time == 100);
  CHECK(stim.events[1].time == 10);
  CHECK(stim.events[1].level == LogicLevel::L1);
}

TEST_CASE("parse_stim: invariant violations") {
  CHECK(!parse_stim("clock c period=6 duty=1.0\n").ok());
  CHECK(!parse_stim("clock c period=0 duty=0.5\n").ok());
  CHECK(!parse_stim("@5 x=1\n@3 x=0\n").ok());
  CHECK(!parse_stim("@-2 x=1\n").ok());
  CHECK(!parse_stim("wibble 3\n").ok());
  CHECK(!parse_stim("@0 x=2\n").ok());
  // timescale after a timed line
  CHECK(!parse_stim("@0 x=1\ntimescale 1ms\n").ok());
}

TEST_CASE("parse_stim: suffixed times convert to stimulus units") {
  auto parsed = parse_stim("timescale 1ms\n@1s x=1\nend 2s\n");
  REQUIRE(parsed.ok());
  CHECK(parsed.value->events[0].time == doctest::Approx(1000.0));
  CHECK(parsed.value->end_time == doctest::Approx(2000.0));
}

TEST_CASE("parse_params applies onto defaults and validates ordering") {
  auto parsed = parse_params("r_pull = 2e9\nc_node = 1e-10\n");
  REQUIRE(parsed.ok());
  CHECK(parsed.value->r_pull == 2e9);
  CHECK(parsed.value->c_node == 1e-10);
  CHECK(parsed.value->r_on == AnalogParams{}.r_on);

  CHECK(!parse_params("nonsense = 4\n").ok());
  CHECK(!parse_params("p_open = -10e3\np_close = -20e3\n").ok());
}

TEST_CASE("parsers are total on fuzzed inputs") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> len(0, 200);
  std::uniform_int_distribution<int> byte(0, 255);
  const std::string seeds[] = {
      "cell a\n in x\n valve v1 gate=x a=y b=ATM\nend\n",
      "fsm f\ninput x\noutput o\nstate A o=1\non A * -> A\n",
      "timescale 1ms\nclock c period=6 duty=0.5\n@0 x=1\nend 10\n",
  };
  for (int round = 0; round < 300; ++round) {
    std::string text;
    if (round % 3 == 0) {
      int n = len(rng);
      for (int i = 0; i < n; ++i) text += static_cast<char>(byte(rng));
    } else {
      text = seeds[round % 3];
      for (int i = 0; i < 8 && !text.empty(); ++i) {
        std::uniform_int_distribution<size_t> pos(0, text.size() - 1);
        text[pos(rng)] = static_cast<char>(byte(rng));
      }
    }
    // must terminate and never crash; diagnostics carry spans inside the file
    auto a = parse_fnl(text, "fuzz");
    auto b = parse_fsm(text, "fuzz");
    auto c = parse_stim(text, "fuzz");
    for (const auto* diags : {&a.diags, &b.diags, &c.diags}) {
      for (const auto& d : *diags) {
        if (!d.span) continue;
        CHECK(d.span->line >= 1);
        CHECK(d.span->column >= 1);
      }
    }
  }
}
