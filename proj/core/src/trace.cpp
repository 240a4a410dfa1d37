#include "fluidic/trace.hpp"

#include <algorithm>
#include <set>

#include "fluidic/error.hpp"

namespace fluidic {

char level_char(LogicLevel level) {
  switch (level) {
    case LogicLevel::L0: return '0';
    case LogicLevel::L1: return '1';
    case LogicLevel::LX: return 'x';
  }
  return 'x';
}

LogicLevel logic_not(LogicLevel v) {
  switch (v) {
    case LogicLevel::L0: return LogicLevel::L1;
    case LogicLevel::L1: return LogicLevel::L0;
    case LogicLevel::LX: return LogicLevel::LX;
  }
  return LogicLevel::LX;
}

LogicLevel logic_nand(std::span<const LogicLevel> inputs) {
  bool any_x = false;
  for (LogicLevel v : inputs) {
    if (v == LogicLevel::L0) return LogicLevel::L1;
    if (v == LogicLevel::LX) any_x = true;
  }
  return any_x ? LogicLevel::LX : LogicLevel::L0;
}

LogicLevel logic_or(std::span<const LogicLevel> inputs) {
  bool any_x = false;
  for (LogicLevel v : inputs) {
    if (v == LogicLevel::L1) return LogicLevel::L1;
    if (v == LogicLevel::LX) any_x = true;
  }
  return any_x ? LogicLevel::LX : LogicLevel::L0;
}

int Trace::net_index(std::string_view net) const {
  for (size_t i = 0; i < nets.size(); ++i) {
    if (nets[i] == net) return static_cast<int>(i);
  }
  return -1;
}

LogicLevel Trace::level_at(std::string_view net, int64_t time) const {
  int i = net_index(net);
  if (i < 0)
    throw Error(Errc::UnknownNet, "net '" + std::string(net) + "' not traced");
  return level_at(i, time);
}

LogicLevel Trace::level_at(int net, int64_t time) const {
  const auto& ch = changes[net];
  auto it = std::upper_bound(
      ch.begin(), ch.end(), time,
      [](int64_t t, const Change& c) { return t < c.time; });
  if (it == ch.begin()) return LogicLevel::LX;
  return std::prev(it)->level;
}

void Trace::record(int net, int64_t time, LogicLevel level) {
  auto& ch = changes[net];
  if (!ch.empty()) {
    if (ch.back().time == time) {
      ch.back().level = level;
      // collapse a change that lands back on the previous value
      if (ch.size() >= 2 && ch[ch.size() - 2].level == level) ch.pop_back();
      return;
    }
    if (ch.back().level == level) return;
  }
  ch.push_back({time, level});
}

int Trace::add_net(std::string name) {
  nets.push_back(std::move(name));
  changes.emplace_back();
  return static_cast<int>(nets.size()) - 1;
}

std::vector<int64_t> Trace::stimulus_change_times() const {
  std::set<int64_t> times;
  for (const auto& net : stimulus_nets) {
    int i = net_index(net);
    if (i < 0) continue;
    for (const auto& c : changes[i]) times.insert(c.time);
  }
  return {times.begin(), times.end()};
}

namespace {

// Settle windows are [t, t+settle) after each stimulus change in either trace.
struct Windows {
  std::vector<std::pair<int64_t, int64_t>> spans;
  bool covers(int64_t t) const {
    for (const auto& [a, b] : spans) {
      if (t >= a && t < b) return true;
    }
    return false;
  }
};

Windows make_windows(const Trace& a, const Trace& b, int64_t settle) {
  std::set<int64_t> starts;
  for (int64_t t : a.stimulus_change_times()) starts.insert(t);
  for (int64_t t : b.stimulus_change_times()) starts.insert(t);
  Windows w;
  for (int64_t t : starts) w.spans.emplace_back(t, t + settle);
  return w;
}

} // namespace

std::optional<TraceDivergence> compare_traces(const Trace& a, const Trace& b,
                                              std::span<const std::string> nets,
                                              int64_t settle) {
  const int64_t end = std::min(a.end_time, b.end_time);
  Windows windows = make_windows(a, b, settle);

  for (const auto& net : nets) {
    int ia = a.net_index(net);
    int ib = b.net_index(net);
    if (ia < 0 || ib < 0)
      throw Error(Errc::UnknownNet, "net '" + net + "' missing from a trace");

    std::set<int64_t> points;
    for (const auto& c : a.changes[ia]) points.insert(c.time);
    for (const auto& c : b.changes[ib]) points.insert(c.time);
    for (const auto& [s, e] : windows.spans) points.insert(e); // after settle
    points.insert(end);

    for (int64_t t : points) {
      if (t > end || windows.covers(t)) continue;
      LogicLevel va = a.level_at(ia, t);
      LogicLevel vb = b.level_at(ib, t);
      if (va != vb) return TraceDivergence{net, t, va, vb};
    }
  }
  return std::nullopt;
}

} // namespace fluidic
