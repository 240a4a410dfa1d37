#include <map>

#include "fluidic/parse.hpp"
#include "lexer.hpp"

namespace fluidic {

namespace {

using detail::Line;
using detail::Token;

// Times with a unit suffix are converted to stimulus units (seconds over
// timescale); bare numbers are taken as units directly.
double to_units(const Token& t, double timescale) {
  return t.has_suffix ? t.si() / timescale : t.number;
}

bool parse_level(const Token& t, LogicLevel* out,
                 std::vector<Diagnostic>& diags) {
  if (t.is_number() && (t.number == 0.0 || t.number == 1.0)) {
    *out = t.number == 0.0 ? LogicLevel::L0 : LogicLevel::L1;
    return true;
  }
  diags.push_back(make_error_at("expected 0 or 1", t.span));
  return false;
}

} // namespace

Parsed<Stimulus> parse_stim(std::string_view text, std::string_view filename) {
  Parsed<Stimulus> out;
  Stimulus stim;
  auto lines = detail::tokenize(text, filename, out.diags);
  auto error = [&](const Token& at, std::string msg) {
    out.diags.push_back(make_error_at(std::move(msg), at.span));
  };

  bool time_used = false; // timescale must precede anything it would affect
  double last_event_time = 0.0;

  for (const auto& line : lines) {
    const Token& head = line.tokens.front();

    if (head.is_punct("@")) {
      if (line.tokens.size() < 2 || !line.tokens[1].is_number()) {
        error(head, "expected @time");
        continue;
      }
      time_used = true;
      double t = to_units(line.tokens[1], stim.timescale);
      if (t < 0) {
        error(line.tokens[1], "event time must be >= 0");
        continue;
      }
      if (t < last_event_time) {
        error(line.tokens[1], "event times must be non-decreasing");
        continue;
      }
      size_t i = 2;
      bool any = false;
      while (i < line.tokens.size()) {
        const Token& net = line.tokens[i];
        if (!net.is_ident() || i + 2 >= line.tokens.size() ||
            !line.tokens[i + 1].is_punct("=")) {
          error(net, "expected net=0|1");
          break;
        }
        LogicLevel lvl;
        if (!parse_level(line.tokens[i + 2], &lvl, out.diags)) break;
        stim.events.push_back({t, net.text, lvl});
        any = true;
        i += 3;
      }
      if (!any && line.tokens.size() <= 2)
        error(head, "event line assigns no nets");
      if (any) last_event_time = t;
      continue;
    }

    if (!head.is_ident()) {
      error(head, "expected a directive");
      continue;
    }
    const std::string& dir = head.text;

    if (dir == "timescale") {
      if (time_used) {
        error(head, "timescale must precede events, clocks and end");
        continue;
      }
      if (line.tokens.size() != 2 || !line.tokens[1].is_number() ||
          !line.tokens[1].has_suffix || line.tokens[1].scale > 1.0) {
        error(head, "timescale expects a time value such as 1ms");
        continue;
      }
      stim.timescale = line.tokens[1].si();
      if (stim.timescale <= 0) error(line.tokens[1], "timescale must be > 0");
    } else if (dir == "init") {
      if (line.tokens.size() != 4 || !line.tokens[1].is_ident() ||
          !line.tokens[2].is_punct("=")) {
        error(head, "init expects net=0|1");
        continue;
      }
      LogicLevel lvl;
      if (!parse_level(line.tokens[3], &lvl, out.diags)) continue;
      stim.inits.push_back({line.tokens[1].text, lvl});
    } else if (dir == "clock") {
      if (line.tokens.size() < 2 || !line.tokens[1].is_ident()) {
        error(head, "clock expects a net name");
        continue;
      }
      time_used = true;
      ClockDef clk;
      clk.net = line.tokens[1].text;
      bool saw_period = false;
      size_t i = 2;
      bool ok = true;
      while (ok && i < line.tokens.size()) {
        const Token& key = line.tokens[i];
        if (!key.is_ident() || i + 2 >= line.tokens.size() ||
            !line.tokens[i + 1].is_punct("=") ||
            !line.tokens[i + 2].is_number()) {
          error(key, "expected key=number");
          ok = false;
          break;
        }
        const Token& val = line.tokens[i + 2];
        if (key.text == "period") {
          clk.period = to_units(val, stim.timescale);
          saw_period = true;
        } else if (key.text == "duty") {
          clk.duty = val.number;
        } else if (key.text == "phase") {
          clk.phase = to_units(val, stim.timescale);
        } else if (key.text == "start") {
          LogicLevel lvl;
          if (!parse_level(val, &lvl, out.diags)) {
            ok = false;
            break;
          }
          clk.start = lvl;
        } else {
          error(key, "unknown clock key '" + key.text + "'");
          ok = false;
          break;
        }
        i += 3;
      }
      if (!ok) continue;
      if (!saw_period || clk.period <= 0) {
        error(head, "clock needs period > 0");
        continue;
      }
      if (!(clk.duty > 0.0 && clk.duty < 1.0)) {
        error(head, "clock duty must satisfy 0 < duty < 1");
        continue;
      }
      if (clk.phase < 0) {
        error(head, "clock phase must be >= 0");
        continue;
      }
      stim.clocks.push_back(std::move(clk));
    } else if (dir == "end") {
      if (line.tokens.size() != 2 || !line.tokens[1].is_number()) {
        error(head, "end expects a time");
        continue;
      }
      time_used = true;
      stim.end_time = to_units(line.tokens[1], stim.timescale);
      if (stim.end_time < 0) error(line.tokens[1], "end time must be >= 0");
    } else {
      error(head, "unknown directive '" + dir + "'");
    }
  }

  if (!has_errors(out.diags)) out.value = std::move(stim);
  return out;
}

Parsed<AnalogParams> parse_params(std::string_view text,
                                  std::string_view filename) {
  Parsed<AnalogParams> out;
  AnalogParams params;
  auto lines = detail::tokenize(text, filename, out.diags);

  std::map<std::string, double*> fields{
      {"p_vac", &params.p_vac},     {"r_pull", &params.r_pull},
      {"r_on", &params.r_on},       {"r_off", &params.r_off},
      {"c_node", &params.c_node},   {"c_gate", &params.c_gate},
      {"c_act", &params.c_act},     {"p_open", &params.p_open},
      {"p_close", &params.p_close}, {"v_ih", &params.v_ih},
      {"v_il", &params.v_il},       {"p_eng", &params.p_eng},
      {"h", &params.step_h},        {"slew", &params.slew},
      {"end_time", &params.end_time}};

  for (const auto& line : lines) {
    const Token& head = line.tokens.front();
    if (!head.is_ident() || line.tokens.size() != 3 ||
        !line.tokens[1].is_punct("=") || !line.tokens[2].is_number()) {
      out.diags.push_back(make_error_at("expected key = value", head.span));
      continue;
    }
    if (head.text == "record_stride") {
      params.record_stride = static_cast<int>(line.tokens[2].number);
      if (params.record_stride < 1)
        out.diags.push_back(
            make_error_at("record_stride must be >= 1", line.tokens[2].span));
      continue;
    }
    auto it = fields.find(head.text);
    if (it == fields.end()) {
      out.diags.push_back(
          make_error_at("unknown parameter '" + head.text + "'", head.span));
      continue;
    }
    *it->second = line.tokens[2].si();
  }

  if (!has_errors(out.diags)) {
    for (auto& d : params.check()) {
      d.span = SourceSpan{std::string(filename), 1, 1, 1};
      out.diags.push_back(std::move(d));
    }
  }
  if (!has_errors(out.diags)) out.value = params;
  return out;
}

} // namespace fluidic
