#include "fluidic/analog_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fluidic/error.hpp"

namespace fluidic {

int AnalogTrace::net_index(std::string_view net) const {
  for (size_t i = 0; i < nets.size(); ++i) {
    if (nets[i] == net) return static_cast<int>(i);
  }
  return -1;
}

double AnalogTrace::value_at(std::string_view net, double time) const {
  int i = net_index(net);
  if (i < 0)
    throw Error(Errc::UnknownNet, "net '" + std::string(net) + "' not traced");
  auto it = std::upper_bound(times.begin(), times.end(), time);
  if (it == times.begin()) return samples[i].front();
  size_t k = std::distance(times.begin(), it) - 1;
  return samples[i][k];
}

std::vector<Diagnostic> AnalogParams::check() const {
  std::vector<Diagnostic> diags;
  auto need = [&](bool ok, const char* msg) {
    if (!ok) diags.push_back(make_error(msg));
  };
  need(p_vac < p_open, "p_vac must be below p_open");
  need(p_open < p_close, "p_open must be below p_close");
  need(p_close < 0.0, "p_close must be below atmospheric (0)");
  need(v_ih < v_il, "v_ih must be below v_il");
  need(r_on < r_pull, "r_on must be below r_pull");
  need(r_pull < r_off, "r_pull must be below r_off");
  need(r_on > 0 && r_pull > 0 && r_off > 0, "resistances must be > 0");
  need(c_node > 0 && c_gate > 0 && c_act > 0, "capacitances must be > 0");
  need(step_h > 0, "step h must be > 0");
  need(slew > 0, "slew must be > 0");
  need(record_stride >= 1, "record_stride must be >= 1");
  return diags;
}

namespace {

// Dense LU with partial pivoting; matrices are desk-scale (tens of nodes).
struct DenseLU {
  int n = 0;
  std::vector<double> a; // row-major, factored in place
  std::vector<int> perm;

  bool factor(std::vector<double> m, int size) {
    n = size;
    a = std::move(m);
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
      int pivot = col;
      double best = std::fabs(a[col * n + col]);
      for (int r = col + 1; r < n; ++r) {
        double v = std::fabs(a[r * n + col]);
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
      if (best == 0.0 || !std::isfinite(best)) return false;
      if (pivot != col) {
        for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
        std::swap(perm[col], perm[pivot]);
      }
      double d = a[col * n + col];
      for (int r = col + 1; r < n; ++r) {
        double f = a[r * n + col] / d;
        a[r * n + col] = f;
        for (int c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      }
    }
    return true;
  }

  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i) {
      double s = x[i];
      for (int j = 0; j < i; ++j) s -= a[i * n + j] * x[j];
      x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
      x[i] = s / a[i * n + i];
    }
    return x;
  }
};

enum class NodeKind { Free, RailVac, RailAtm, Source, Derived };

} // namespace

struct AnalogSim::Impl {
  AnalogParams params;

  std::vector<std::string> net_names;
  std::map<std::string, int, std::less<>> net_index;
  std::vector<NodeKind> kind;
  std::vector<int> free_index; // into the unknown vector, -1 otherwise
  std::vector<double> capacitance; // per net; meaningful for free nodes
  int n_free = 0;

  struct ValveModel {
    std::string name;
    int gate = -1, a = -1, b = -1;
    bool open = false;
  };
  std::vector<ValveModel> valve_models;
  std::vector<std::string> valve_names;

  struct EdgeModel {
    int a = -1, b = -1;
    double conductance = 0.0; // fixed restrictions
    int valve = -1;           // >=0: conductance from valve state
  };
  std::vector<EdgeModel> edges;

  struct DerivedNet {
    int out = -1;
    std::vector<int> inputs;
  };
  std::vector<DerivedNet> derived; // topologically ordered

  struct SourceState {
    double value = 0.0;
    double target = 0.0;
  };
  std::map<int, SourceState> sources;

  AnalogState state;
  std::vector<ValveEvent> events;

  // factorization cache
  std::vector<bool> lu_config;
  double lu_h = -1.0;
  bool lu_valid = false;
  DenseLU lu;

  int net(const std::string& name) {
    auto it = net_index.find(name);
    if (it != net_index.end()) return it->second;
    int id = static_cast<int>(net_names.size());
    net_names.push_back(name);
    net_index.emplace(name, id);
    kind.push_back(NodeKind::Free);
    free_index.push_back(-1);
    capacitance.push_back(0.0);
    return id;
  }

  double edge_conductance(const EdgeModel& e) const {
    if (e.valve < 0) return e.conductance;
    return valve_models[e.valve].open ? 1.0 / params.r_on : 1.0 / params.r_off;
  }

  double pinned_pressure_after(int node, double dt) const {
    switch (kind[node]) {
      case NodeKind::RailVac: return params.p_vac;
      case NodeKind::RailAtm: return 0.0;
      case NodeKind::Source: {
        const SourceState& s = sources.at(node);
        double rate = std::fabs(params.p_vac) / params.slew;
        double delta = s.target - s.value;
        double max_move = rate * dt;
        if (std::fabs(delta) <= max_move) return s.target;
        return s.value + (delta > 0 ? max_move : -max_move);
      }
      default: return state.pressure[node];
    }
  }

  void refresh_derived() {
    for (const auto& d : derived) {
      double p = 0.0;
      bool first = true;
      for (int in : d.inputs) {
        double v = state.pressure[in];
        if (first || v < p) p = v;
        first = false;
      }
      state.pressure[d.out] = p;
    }
  }

  void ensure_factorization(double h) {
    std::vector<bool> config(valve_models.size());
    for (size_t i = 0; i < valve_models.size(); ++i)
      config[i] = valve_models[i].open;
    if (lu_valid && lu_h == h && lu_config == config) return;

    std::vector<double> a(static_cast<size_t>(n_free) * n_free, 0.0);
    for (int i = 0; i < static_cast<int>(net_names.size()); ++i) {
      int f = free_index[i];
      if (f >= 0) a[f * n_free + f] = capacitance[i] / h;
    }
    for (const auto& e : edges) {
      double g = edge_conductance(e);
      int fa = free_index[e.a], fb = free_index[e.b];
      if (fa >= 0) a[fa * n_free + fa] += g;
      if (fb >= 0) a[fb * n_free + fb] += g;
      if (fa >= 0 && fb >= 0) {
        a[fa * n_free + fb] -= g;
        a[fb * n_free + fa] -= g;
      }
    }
    if (!lu.factor(std::move(a), n_free))
      throw Error(Errc::NonConvergence, "singular pneumatic network matrix");
    lu_config = std::move(config);
    lu_h = h;
    lu_valid = true;
  }

  // One implicit-Euler solve of size dt from the current state; returns the
  // end-of-step free-node pressures without committing anything.
  std::vector<double> solve_step(double dt) {
    ensure_factorization(dt);
    std::vector<double> b(n_free, 0.0);
    for (int i = 0; i < static_cast<int>(net_names.size()); ++i) {
      int f = free_index[i];
      if (f >= 0) b[f] = capacitance[i] / dt * state.pressure[i];
    }
    for (const auto& e : edges) {
      double g = edge_conductance(e);
      int fa = free_index[e.a], fb = free_index[e.b];
      if (fa >= 0 && fb < 0) b[fa] += g * pinned_pressure_after(e.b, dt);
      if (fb >= 0 && fa < 0) b[fb] += g * pinned_pressure_after(e.a, dt);
    }
    return lu.solve(b);
  }

  double gate_pressure(const std::vector<double>& free_p, int node,
                       double dt) const {
    if (free_index[node] >= 0) return free_p[free_index[node]];
    if (kind[node] == NodeKind::Derived) {
      // derived nets follow their inputs within the same instant
      const DerivedNet* d = nullptr;
      for (const auto& dn : derived)
        if (dn.out == node) d = &dn;
      double p = 0.0;
      bool first = true;
      for (int in : d->inputs) {
        double v = free_index[in] >= 0 ? free_p[free_index[in]]
                                       : pinned_pressure_after(in, dt);
        if (first || v < p) p = v;
        first = false;
      }
      return p;
    }
    return pinned_pressure_after(node, dt);
  }

  // Valves whose hysteresis thresholds are crossed by the trial solution.
  std::vector<int> crossings(const std::vector<double>& free_p, double dt) const {
    std::vector<int> toggled;
    for (size_t v = 0; v < valve_models.size(); ++v) {
      double pg = gate_pressure(free_p, valve_models[v].gate, dt);
      if (!valve_models[v].open && pg <= params.p_open)
        toggled.push_back(static_cast<int>(v));
      else if (valve_models[v].open && pg >= params.p_close)
        toggled.push_back(static_cast<int>(v));
    }
    return toggled;
  }

  void commit(const std::vector<double>& free_p, double dt) {
    for (int i = 0; i < static_cast<int>(net_names.size()); ++i) {
      if (free_index[i] >= 0)
        state.pressure[i] = free_p[free_index[i]];
      else if (kind[i] != NodeKind::Derived)
        state.pressure[i] = pinned_pressure_after(i, dt);
    }
    for (auto& [node, src] : sources) src.value = state.pressure[node];
    state.time += dt;
    refresh_derived();
  }

  void advance(double dt) {
    const double locate_tol = params.step_h / 100.0;
    double remaining = dt;
    int flips = 0;
    while (remaining > 1e-15) {
      std::vector<double> trial = solve_step(remaining);
      if (crossings(trial, remaining).empty()) {
        commit(trial, remaining);
        return;
      }
      // Bisect to the first switching instant.
      double lo = 0.0, hi = remaining;
      while (hi - lo > locate_tol) {
        double mid = 0.5 * (lo + hi);
        if (crossings(solve_step(mid), mid).empty())
          lo = mid;
        else
          hi = mid;
      }
      std::vector<double> at_switch = solve_step(hi);
      std::vector<int> toggled = crossings(at_switch, hi);
      commit(at_switch, hi);
      for (int v : toggled) {
        valve_models[v].open = !valve_models[v].open;
        events.push_back({state.time, valve_names[v], valve_models[v].open});
      }
      if (++flips > 1000)
        throw Error(Errc::NonConvergence,
                    "valve switching does not settle (chatter at t=" +
                        std::to_string(state.time) + ")");
      remaining -= hi;
    }
  }
};

AnalogSim::AnalogSim(const Netlist& valve_level, const AnalogParams& params,
                     const std::vector<std::string>& source_nets)
    : impl_(std::make_shared<Impl>()) {
  auto param_diags = params.check();
  if (has_errors(param_diags))
    throw Error(Errc::InvalidArgument,
                "invalid analog parameters: " + param_diags.front().message);
  impl_->params = params;

  const Cell* cell = nullptr;
  if (!valve_level.top.empty())
    cell = valve_level.find_cell(valve_level.top);
  else if (valve_level.cells.size() == 1)
    cell = &valve_level.cells.front();
  if (!cell)
    throw Error(Errc::InvalidArgument,
                "analog simulation needs a flattened netlist with a top cell");

  Impl& im = *impl_;
  int vac = im.net(std::string(kVacRail));
  int atm = im.net(std::string(kAtmRail));
  im.kind[vac] = NodeKind::RailVac;
  im.kind[atm] = NodeKind::RailAtm;
  for (const auto& p : cell->ports) im.net(p.name);

  for (const auto& name : source_nets) {
    int n = im.net(name);
    if (im.kind[n] != NodeKind::Free)
      throw Error(Errc::InvalidArgument,
                  "source net '" + name + "' conflicts with a rail");
    im.kind[n] = NodeKind::Source;
    im.sources[n] = {};
  }

  std::vector<int> gate_count(im.net_names.size(), 0);
  auto grow = [&](int id) {
    if (id >= static_cast<int>(gate_count.size()))
      gate_count.resize(im.net_names.size(), 0);
    return id;
  };

  for (const auto& comp : cell->components) {
    if (const auto* v = std::get_if<Valve>(&comp.body)) {
      Impl::ValveModel vm;
      vm.name = comp.name;
      vm.gate = grow(im.net(v->gate));
      vm.a = grow(im.net(v->port_a));
      vm.b = grow(im.net(v->port_b));
      ++gate_count[vm.gate];
      int idx = static_cast<int>(im.valve_models.size());
      im.valve_models.push_back(vm);
      im.valve_names.push_back(comp.name);
      im.edges.push_back({vm.a, vm.b, 0.0, idx});
    } else if (const auto* r = std::get_if<Restriction>(&comp.body)) {
      int a = grow(im.net(r->port_a));
      int b = grow(im.net(r->port_b));
      im.edges.push_back({a, b, 1.0 / r->resistance, -1});
    } else if (const auto* ch = std::get_if<Chamber>(&comp.body)) {
      int n = grow(im.net(ch->node));
      im.capacitance[n] += ch->capacitance;
    } else if (const auto* act = std::get_if<Actuator>(&comp.body)) {
      int n = grow(im.net(act->node));
      im.capacitance[n] += act->capacitance;
    } else if (const auto* j = std::get_if<Junction>(&comp.body)) {
      Impl::DerivedNet d;
      d.out = grow(im.net(j->out));
      for (const auto& in : j->in) d.inputs.push_back(grow(im.net(in)));
      if (im.kind[d.out] != NodeKind::Free)
        throw Error(Errc::InvalidArgument,
                    "junction output '" + j->out + "' conflicts with a rail or "
                    "source");
      im.kind[d.out] = NodeKind::Derived;
      im.derived.push_back(std::move(d));
    } else {
      throw Error(Errc::NotFlattened,
                  "component '" + comp.name +
                      "' is not a valve-level primitive; flatten to valve "
                      "level first");
    }
  }
  gate_count.resize(im.net_names.size(), 0);

  // Derived nets must not feed the resistive network.
  for (const auto& e : im.edges) {
    for (int n : {e.a, e.b}) {
      if (im.kind[n] == NodeKind::Derived)
        throw Error(Errc::InvalidArgument,
                    "junction output '" + im.net_names[n] +
                        "' cannot carry flow");
    }
  }
  // Junction-of-junction needs dependency ordering; reject cycles, order by
  // repeated sweeps (desk-scale lists).
  {
    std::set<int> known;
    for (size_t i = 0; i < im.net_names.size(); ++i)
      if (im.kind[i] != NodeKind::Derived) known.insert(static_cast<int>(i));
    std::vector<Impl::DerivedNet> ordered;
    std::vector<Impl::DerivedNet> pending = im.derived;
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        bool ready = true;
        for (int in : it->inputs)
          if (!known.count(in)) ready = false;
        if (ready) {
          known.insert(it->out);
          ordered.push_back(*it);
          it = pending.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
      if (!progress)
        throw Error(Errc::InvalidArgument, "junctions form a cycle");
    }
    im.derived = std::move(ordered);
  }

  // Free-node capacitance: wiring plus membrane load per driven valve gate.
  im.n_free = 0;
  for (size_t i = 0; i < im.net_names.size(); ++i) {
    if (im.kind[i] != NodeKind::Free) continue;
    im.capacitance[i] += params.c_node + gate_count[i] * params.c_gate;
    im.free_index[i] = im.n_free++;
  }

  // Floating-node check: every free node needs a resistive path to a pinned
  // node (valves count in either state; r_off is finite).
  {
    std::vector<char> reached(im.net_names.size(), 0);
    std::vector<int> work;
    for (size_t i = 0; i < im.net_names.size(); ++i) {
      if (im.kind[i] == NodeKind::RailVac || im.kind[i] == NodeKind::RailAtm ||
          im.kind[i] == NodeKind::Source) {
        reached[i] = 1;
        work.push_back(static_cast<int>(i));
      }
    }
    while (!work.empty()) {
      int n = work.back();
      work.pop_back();
      for (const auto& e : im.edges) {
        int other = e.a == n ? e.b : (e.b == n ? e.a : -1);
        if (other >= 0 && !reached[other]) {
          reached[other] = 1;
          work.push_back(other);
        }
      }
    }
    for (size_t i = 0; i < im.net_names.size(); ++i) {
      if (im.kind[i] == NodeKind::Free && !reached[i])
        throw Error(Errc::FloatingNode,
                    "net '" + im.net_names[i] +
                        "' has no resistive path to a rail");
    }
  }

  im.state.time = 0.0;
  im.state.pressure.assign(im.net_names.size(), 0.0);
  im.state.pressure[vac] = params.p_vac;
  im.state.valve_open.assign(im.valve_models.size(), false);
  im.refresh_derived();
}

const std::vector<std::string>& AnalogSim::nets() const {
  return impl_->net_names;
}

const std::vector<std::string>& AnalogSim::valves() const {
  return impl_->valve_names;
}

const AnalogState& AnalogSim::state() const {
  auto& st = impl_->state;
  st.valve_open.resize(impl_->valve_models.size());
  for (size_t i = 0; i < impl_->valve_models.size(); ++i)
    st.valve_open[i] = impl_->valve_models[i].open;
  return st;
}

double AnalogSim::pressure(std::string_view net) const {
  auto it = impl_->net_index.find(net);
  if (it == impl_->net_index.end())
    throw Error(Errc::UnknownNet, "unknown net '" + std::string(net) + "'");
  return impl_->state.pressure[it->second];
}

void AnalogSim::force_initial_pressure(std::string_view net, double pascals) {
  auto it = impl_->net_index.find(net);
  if (it == impl_->net_index.end())
    throw Error(Errc::UnknownNet, "unknown net '" + std::string(net) + "'");
  if (impl_->kind[it->second] != NodeKind::Free)
    throw Error(Errc::InvalidArgument,
                "can only force free nodes, not '" + std::string(net) + "'");
  impl_->state.pressure[it->second] = pascals;
  impl_->refresh_derived();
}

void AnalogSim::set_source_initial(std::string_view net, double pascals) {
  auto it = impl_->net_index.find(net);
  if (it == impl_->net_index.end() ||
      impl_->kind[it->second] != NodeKind::Source)
    throw Error(Errc::InvalidArgument,
                "'" + std::string(net) + "' is not a source net");
  impl_->sources[it->second] = {pascals, pascals};
  impl_->state.pressure[it->second] = pascals;
  impl_->refresh_derived();
}

void AnalogSim::step(const std::map<std::string, double>& boundary, double dt) {
  Impl& im = *impl_;
  for (const auto& [name, target] : boundary) {
    auto it = im.net_index.find(name);
    if (it == im.net_index.end() || im.kind[it->second] != NodeKind::Source)
      throw Error(Errc::InvalidArgument,
                  "'" + name + "' is not a source net");
    im.sources[it->second].target = target;
  }
  im.advance(dt > 0.0 ? dt : im.params.step_h);
}

std::vector<ValveEvent> AnalogSim::take_valve_events() {
  return std::exchange(impl_->events, {});
}

namespace {

double level_pressure(LogicLevel lvl, const AnalogParams& p) {
  return lvl == LogicLevel::L1 ? p.p_vac : 0.0;
}

} // namespace

AnalogResult run_analog(const Netlist& valve_level, const Stimulus& stimulus,
                        const AnalogParams& params) {
  const double scale = stimulus.timescale;
  double end = params.end_time > 0.0 ? params.end_time
                                     : stimulus.end_time * scale;
  if (end <= 0.0)
    throw Error(Errc::InvalidArgument,
                "no end time: set it in the stimulus or the parameters");

  std::vector<std::string> sources = stimulus.driven_nets();
  AnalogSim sim(valve_level, params, sources);

  // Per-source piecewise targets in seconds.
  std::map<std::string, std::vector<std::pair<double, double>>> targets;
  for (const auto& e : stimulus.events)
    targets[e.net].emplace_back(e.time * scale, level_pressure(e.level, params));
  for (const auto& clk : stimulus.clocks) {
    auto& list = targets[clk.net];
    list.emplace_back(0.0, level_pressure(Stimulus::clock_level(clk, 0.0), params));
    for (const auto& [t, lvl] :
         Stimulus::clock_edges(clk, end / scale))
      list.emplace_back(t * scale, level_pressure(lvl, params));
  }
  for (auto& [net, list] : targets) {
    std::sort(list.begin(), list.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!list.empty() && list.front().first <= 0.0)
      sim.set_source_initial(net, list.front().second);
  }

  for (const auto& init : stimulus.inits)
    sim.force_initial_pressure(init.net,
                               level_pressure(init.level, params));

  AnalogTrace trace;
  trace.nets = sim.nets();
  trace.samples.resize(trace.nets.size());
  trace.end_time = end;

  auto sample = [&]() {
    trace.times.push_back(sim.state().time);
    for (size_t i = 0; i < trace.nets.size(); ++i)
      trace.samples[i].push_back(sim.state().pressure[i]);
  };
  sample();

  std::map<std::string, size_t> cursor;
  std::map<std::string, double> boundary;
  for (const auto& [net, list] : targets)
    boundary[net] = list.empty() ? 0.0 : list.front().second;

  int k = 0;
  while (sim.state().time < end - 1e-12) {
    double now = sim.state().time;
    double next_stop = std::min(end, now + params.step_h);
    for (const auto& [net, list] : targets) {
      size_t& c = cursor[net];
      while (c < list.size() && list[c].first <= now + 1e-12) {
        boundary[net] = list[c].second;
        ++c;
      }
      if (c < list.size()) next_stop = std::min(next_stop, list[c].first);
    }
    sim.step(boundary, next_stop - now);
    if (++k % params.record_stride == 0) sample();
  }
  if (trace.times.back() < sim.state().time) sample();
  trace.valve_events = sim.take_valve_events();

  // Thresholded logic view, times in milliseconds.
  Trace logic;
  logic.end_time = std::llround(end * 1000.0);
  logic.stimulus_nets = sources;
  for (size_t i = 0; i < trace.nets.size(); ++i) {
    int n = logic.add_net(trace.nets[i]);
    for (size_t s = 0; s < trace.times.size(); ++s) {
      double p = trace.samples[i][s];
      LogicLevel lvl = p <= params.v_ih
                           ? LogicLevel::L1
                           : (p >= params.v_il ? LogicLevel::L0 : LogicLevel::LX);
      int64_t t = std::llround(trace.times[s] * 1000.0);
      if (logic.changes[n].empty()) {
        logic.changes[n].push_back({0, lvl});
      } else {
        logic.record(n, std::max<int64_t>(t, logic.changes[n].back().time),
                     lvl);
      }
    }
  }
  return {std::move(trace), std::move(logic)};
}

std::vector<TransitionTimes> timing_report(const AnalogTrace& trace,
                                           const AnalogParams& params) {
  std::vector<TransitionTimes> report;
  const double p10 = 0.1 * params.p_vac;
  const double p90 = 0.9 * params.p_vac;

  auto cross_time = [&](size_t i, size_t k, double level) {
    double t0 = trace.times[k - 1], t1 = trace.times[k];
    double v0 = trace.samples[i][k - 1], v1 = trace.samples[i][k];
    if (v1 == v0) return t1;
    return t0 + (level - v0) / (v1 - v0) * (t1 - t0);
  };

  for (size_t i = 0; i < trace.nets.size(); ++i) {
    const auto& s = trace.samples[i];
    TransitionTimes tt;
    tt.net = trace.nets[i];

    // first complete rise toward vacuum: cross 10% then 90% of the swing
    double t10 = -1.0;
    for (size_t k = 1; k < s.size(); ++k) {
      if (t10 < 0 && s[k - 1] > p10 && s[k] <= p10)
        t10 = cross_time(i, k, p10);
      if (t10 >= 0 && s[k - 1] > p90 && s[k] <= p90) {
        tt.rise_10_90 = cross_time(i, k, p90) - t10;
        break;
      }
    }
    // first complete fall back toward atmosphere
    double t90 = -1.0;
    for (size_t k = 1; k < s.size(); ++k) {
      if (t90 < 0 && s[k - 1] < p90 && s[k] >= p90)
        t90 = cross_time(i, k, p90);
      if (t90 >= 0 && s[k - 1] < p10 && s[k] >= p10) {
        tt.fall_10_90 = cross_time(i, k, p10) - t90;
        break;
      }
    }

    if (tt.rise_10_90 >= 0 || tt.fall_10_90 >= 0) report.push_back(std::move(tt));
  }
  return report;
}

} // namespace fluidic
