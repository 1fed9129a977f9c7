// Copyright 2026 the geqdot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace geqdot::dqd {

// One-dimensional double-quantum-dot model along the inter-dot axis.
// Lengths in nm, energies in meV, gate voltages in mV.
struct DqdConfig {
  double mass_over_m0 = 0.058;
  double well_width_nm = 12.0;
  double barrier_length_nm = 35.0;   // separation gate length L_S
  double v_bg_mV = 40.0;             // barrier-gate voltage
  double barrier_height0_meV = 40.0; // barrier height at V_BG = 0
  double lever_arm_meV_per_mV = 0.5; // barrier lowering per mV of V_BG
  double well_depth_meV = 80.0;      // confinement ceiling outside the device
  double margin_nm = 45.0;           // outer padding beyond the wells
  double edge_rise_halfwidth_nm = 10.0;
  double smooth_nm = 2.0;            // erf edge smoothing scale
  double dx_nm = 0.05;
  // Transmission factor of the saddle constriction above the 1-D channel;
  // calibrated once against the reference operating point.
  double saddle_transmission = 0.18025;

  double barrier_height_meV() const {
    return barrier_height0_meV - lever_arm_meV_per_mV * v_bg_mV;
  }

  void validate() const {
    if (!(mass_over_m0 > 0.0))
      throw std::invalid_argument("mass must be positive");
    if (!(well_width_nm > 0.0) || !(barrier_length_nm > 0.0))
      throw std::invalid_argument("geometry lengths must be positive");
    if (!(dx_nm > 0.0) || dx_nm > 0.2)
      throw std::invalid_argument("grid step must be in (0, 0.2] nm");
    if (!(well_depth_meV > 0.0))
      throw std::invalid_argument("well depth must be positive");
    if (!(saddle_transmission > 0.0) || saddle_transmission > 1.0)
      throw std::invalid_argument("saddle transmission must be in (0, 1]");
  }
};

}  // namespace geqdot::dqd
