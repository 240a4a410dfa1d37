#include "fluidic/stimulus.hpp"

#include <algorithm>
#include <cmath>

namespace fluidic {

std::vector<std::pair<double, LogicLevel>> Stimulus::clock_edges(
    const ClockDef& clock, double until) {
  std::vector<std::pair<double, LogicLevel>> edges;
  const LogicLevel pulse = logic_not(clock.start);
  for (double t0 = clock.phase; t0 <= until; t0 += clock.period) {
    edges.emplace_back(t0, pulse);
    double t1 = t0 + clock.duty * clock.period;
    if (t1 > until) break;
    edges.emplace_back(t1, clock.start);
  }
  return edges;
}

LogicLevel Stimulus::clock_level(const ClockDef& clock, double t) {
  if (t < clock.phase) return clock.start;
  double u = t - clock.phase;
  double frac = u - std::floor(u / clock.period) * clock.period;
  return frac < clock.duty * clock.period ? logic_not(clock.start) : clock.start;
}

std::vector<std::string> Stimulus::driven_nets() const {
  std::vector<std::string> out;
  auto add = [&out](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  for (const auto& e : events) add(e.net);
  for (const auto& c : clocks) add(c.net);
  return out;
}

} // namespace fluidic
