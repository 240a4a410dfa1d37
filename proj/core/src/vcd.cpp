#include "fluidic/vcd.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "fluidic/error.hpp"

namespace fluidic {

namespace {

constexpr int kIdBase = 94; // printable identifier characters '!'..'~'

std::string vcd_id(size_t index) {
  if (index >= static_cast<size_t>(kIdBase) * kIdBase)
    throw Error(Errc::InvalidArgument, "too many VCD variables");
  std::string id;
  if (index >= kIdBase) {
    id += static_cast<char>('!' + index / kIdBase);
    index %= kIdBase;
  }
  id += static_cast<char>('!' + index);
  return id;
}

std::string fmt_real(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void header(std::string& out, std::string_view timescale) {
  out += "$version fluidic vcd 1 $end\n";
  out += "$timescale ";
  out += timescale;
  out += " $end\n";
}

} // namespace

std::string write_vcd(const Trace& trace, std::string_view timescale,
                      std::span<const std::string> vars) {
  std::vector<std::string> names(vars.begin(), vars.end());
  if (names.empty()) names = trace.nets;

  std::string out;
  header(out, timescale);
  out += "$scope module top $end\n";
  std::vector<int> net_of(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    int n = trace.net_index(names[i]);
    if (n < 0)
      throw Error(Errc::UnknownNet, "net '" + names[i] + "' not in trace");
    net_of[i] = n;
    out += "$var wire 1 " + vcd_id(i) + " " + names[i] + " $end\n";
  }
  out += "$upscope $end\n$enddefinitions $end\n";

  // time-major merge of the per-net change lists
  std::map<int64_t, std::vector<std::pair<size_t, LogicLevel>>> by_time;
  for (size_t i = 0; i < names.size(); ++i) {
    for (const auto& c : trace.changes[net_of[i]]) {
      if (c.time > trace.end_time) break;
      by_time[c.time].emplace_back(i, c.level);
    }
  }

  bool first = true;
  for (const auto& [time, changes] : by_time) {
    out += "#" + std::to_string(time) + "\n";
    if (first) out += "$dumpvars\n";
    for (const auto& [var, level] : changes) {
      out += level_char(level);
      out += vcd_id(var);
      out += "\n";
    }
    if (first) {
      // nets without a change at t=0 still need an initial value
      if (by_time.begin()->first != 0) {
        for (size_t i = 0; i < names.size(); ++i) {
          out += 'x';
          out += vcd_id(i);
          out += "\n";
        }
      }
      out += "$end\n";
      first = false;
    }
  }
  if (by_time.empty()) {
    out += "#0\n$dumpvars\n";
    for (size_t i = 0; i < names.size(); ++i) {
      out += 'x';
      out += vcd_id(i);
      out += "\n";
    }
    out += "$end\n";
  }
  return out;
}

std::string write_vcd_analog(const AnalogTrace& analog, const Trace& thresholded,
                             std::span<const std::string> vars) {
  std::vector<std::string> names(vars.begin(), vars.end());
  if (names.empty()) names = analog.nets;

  std::string out;
  header(out, "100us");
  out += "$scope module top $end\n";
  std::vector<int> real_of(names.size()), bit_of(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    int n = analog.net_index(names[i]);
    if (n < 0)
      throw Error(Errc::UnknownNet, "net '" + names[i] + "' not in trace");
    real_of[i] = n;
    bit_of[i] = thresholded.net_index(names[i]);
    out += "$var real 64 " + vcd_id(2 * i) + " " + names[i] + " $end\n";
    out += "$var wire 1 " + vcd_id(2 * i + 1) + " " + names[i] + "_bit $end\n";
  }
  out += "$upscope $end\n$enddefinitions $end\n";

  auto tick = [](double seconds) {
    return static_cast<int64_t>(std::llround(seconds / 100e-6));
  };

  // logic changes keyed by tick; pressures dumped at every recorded sample
  std::map<int64_t, std::vector<std::string>> records;
  for (size_t s = 0; s < analog.times.size(); ++s) {
    auto& rec = records[tick(analog.times[s])];
    for (size_t i = 0; i < names.size(); ++i) {
      rec.push_back("r" + fmt_real(analog.samples[real_of[i]][s]) + " " +
                    vcd_id(2 * i));
    }
  }
  for (size_t i = 0; i < names.size(); ++i) {
    if (bit_of[i] < 0) continue;
    for (const auto& c : thresholded.changes[bit_of[i]]) {
      records[c.time * 10].push_back(std::string(1, level_char(c.level)) +
                                     vcd_id(2 * i + 1));
    }
  }

  bool first = true;
  for (const auto& [time, recs] : records) {
    out += "#" + std::to_string(time) + "\n";
    if (first) {
      out += "$dumpvars\n";
    }
    for (const auto& r : recs) {
      out += r;
      out += "\n";
    }
    if (first) {
      out += "$end\n";
      first = false;
    }
  }
  return out;
}

std::string write_csv(const AnalogTrace& trace) {
  std::string out = "time";
  for (const auto& n : trace.nets) {
    out += ",";
    out += n;
  }
  out += "\n";
  for (size_t s = 0; s < trace.times.size(); ++s) {
    out += fmt_real(trace.times[s]);
    for (size_t i = 0; i < trace.nets.size(); ++i) {
      out += ",";
      out += fmt_real(trace.samples[i][s]);
    }
    out += "\n";
  }
  return out;
}

} // namespace fluidic
