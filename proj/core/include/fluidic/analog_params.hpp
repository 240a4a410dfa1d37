#pragma once

#include <vector>

#include "fluidic/diag.hpp"

namespace fluidic {

/// Lumped-element pneumatic constants. Pressures are Pa gauge (vacuum is
/// negative), resistances Pa·s/m³, capacitances m³/Pa, times seconds. The
/// defaults form one self-consistent set tuned for ~50 ms gate time
/// constants (tau_pull = r_pull * c_node); they are engineering choices, not
/// measured values.
struct AnalogParams {
  double p_vac = -80e3;
  double r_pull = 1e9;
  double r_on = 2e7;
  double r_off = 1e14;
  double c_node = 5e-11;
  double c_gate = 1e-10; // extra capacitance per valve gate fed by a net
  double c_act = 5e-10;
  double p_open = -45e3;  // valve opens when gate pressure falls to this
  double p_close = -25e3; // valve closes when gate pressure rises to this
  double v_ih = -50e3;    // at or below: logic 1
  double v_il = -15e3;    // at or above: logic 0
  double p_eng = -40e3;   // actuator engagement threshold
  double step_h = 0.5e-3;
  double slew = 1e-3; // source ramp time between 0 and p_vac
  double end_time = 0.0;
  int record_stride = 1;

  /// Ordering/positivity invariants; empty when consistent.
  std::vector<Diagnostic> check() const;
};

} // namespace fluidic
