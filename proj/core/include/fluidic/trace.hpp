#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fluidic {

/// Three-valued signal level. L1 means vacuum asserted on the net, L0 means
/// near-atmospheric, LX unknown/unsettled.
enum class LogicLevel : uint8_t { L0 = 0, L1 = 1, LX = 2 };

char level_char(LogicLevel level);
LogicLevel logic_not(LogicLevel v);
/// 0-dominant: any L0 input forces L1; all L1 gives L0; otherwise LX.
LogicLevel logic_nand(std::span<const LogicLevel> inputs);
/// 1-dominant wired-OR used by routing junctions.
LogicLevel logic_or(std::span<const LogicLevel> inputs);

/// Time-stamped waveforms for a set of nets. Times are abstract integer
/// simulation units (logic runs) or milliseconds (thresholded analog runs).
/// Per net, change times are strictly increasing and start at 0.
struct Trace {
  struct Change {
    int64_t time;
    LogicLevel level;
    bool operator==(const Change&) const = default;
  };

  std::vector<std::string> nets;
  std::vector<std::vector<Change>> changes; // parallel to nets
  std::vector<std::string> stimulus_nets;   // drive settle-window computation
  int64_t end_time = 0;

  int net_index(std::string_view net) const;
  bool has_net(std::string_view net) const { return net_index(net) >= 0; }

  /// Level in effect at `time` (last change at or before it).
  LogicLevel level_at(std::string_view net, int64_t time) const;
  LogicLevel level_at(int net, int64_t time) const;

  /// Appends a change, coalescing repeats of the current level.
  void record(int net, int64_t time, LogicLevel level);
  int add_net(std::string name);

  /// Times at which any stimulus net changes (sorted, deduplicated).
  std::vector<int64_t> stimulus_change_times() const;
};

struct TraceDivergence {
  std::string net;
  int64_t time = 0;
  LogicLevel a = LogicLevel::LX;
  LogicLevel b = LogicLevel::LX;
};

/// Compares `nets` on both traces at every change point outside the settle
/// windows that follow stimulus changes. Returns the first divergence, or
/// nullopt when equal. Throws Error{UnknownNet} when a net is missing.
std::optional<TraceDivergence> compare_traces(const Trace& a, const Trace& b,
                                              std::span<const std::string> nets,
                                              int64_t settle);

} // namespace fluidic
