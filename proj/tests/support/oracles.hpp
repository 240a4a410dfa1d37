#pragma once

// Independent reference computations the simulators are checked against.
// These deliberately avoid the event-driven and matrix code paths.

#include <map>
#include <string>
#include <vector>

#include "fluidic/netlist.hpp"
#include "fluidic/trace.hpp"

namespace testutil {

/// Levelized evaluation of an acyclic gate netlist under constant inputs:
/// repeatedly sweep all gates until no net changes. Returns net -> level.
/// Junctions evaluate as 1-dominant ORs, NOT/NAND per their truth tables.
inline std::map<std::string, fluidic::LogicLevel> levelized_eval(
    const fluidic::Cell& cell,
    std::map<std::string, fluidic::LogicLevel> levels) {
  using fluidic::Instance;
  using fluidic::Junction;
  using fluidic::LogicLevel;

  levels["VAC"] = LogicLevel::L1;
  levels["ATM"] = LogicLevel::L0;
  auto get = [&levels](const std::string& n) {
    auto it = levels.find(n);
    return it == levels.end() ? LogicLevel::LX : it->second;
  };

  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps++ < 1000) {
    changed = false;
    for (const auto& comp : cell.components) {
      std::string out;
      LogicLevel v = LogicLevel::LX;
      if (const auto* inst = std::get_if<Instance>(&comp.body)) {
        const std::string* y = inst->actual_for("y");
        if (!y) continue; // flip-flops are not combinational
        out = *y;
        std::vector<LogicLevel> in;
        for (const char* f : {"a", "b", "c", "d", "e", "f", "g", "h"}) {
          if (const std::string* a = inst->actual_for(f)) in.push_back(get(*a));
        }
        if (inst->cell == "NOT") {
          v = fluidic::logic_not(in[0]);
        } else {
          v = fluidic::logic_nand(in);
        }
      } else if (const auto* j = std::get_if<Junction>(&comp.body)) {
        out = j->out;
        std::vector<LogicLevel> in;
        for (const auto& n : j->in) in.push_back(get(n));
        v = fluidic::logic_or(in);
      } else {
        continue;
      }
      if (get(out) != v) {
        levels[out] = v;
        changed = true;
      }
    }
  }
  return levels;
}

/// Exhaustive stable-state enumeration of the cross-coupled NAND latch:
/// all (Q, Qbar) in {0,1}^2 with Q == NAND(nS, Qbar) and Qbar == NAND(nR, Q).
inline std::vector<std::pair<bool, bool>> latch_stable_states(bool ns, bool nr) {
  std::vector<std::pair<bool, bool>> stable;
  for (int q = 0; q <= 1; ++q) {
    for (int qb = 0; qb <= 1; ++qb) {
      bool nq = !(ns && qb);
      bool nqb = !(nr && q);
      if (nq == (q == 1) && nqb == (qb == 1)) stable.emplace_back(q == 1, qb == 1);
    }
  }
  return stable;
}

} // namespace testutil
