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

#include <cstdint>
#include <vector>

#include "geqdot/gate/hamiltonian6.hpp"
#include "geqdot/gate/wkb.hpp"

namespace geqdot::gate {

struct VariabilitySpec {
  double sigma_ls_nm = 0.5;
  int n_samples = 10000;
  uint64_t seed = 12345;
  int histogram_bins = 40;
};

struct VariabilityResult {
  double sensitivity = 0.0;       // kappa * sigma_LS, closed form
  double lntc_spread = 0.0;       // sample SD of ln t_c
  double lnt_spread = 0.0;        // sample SD of ln T_CZ
  double t_norm_spread = 0.0;     // sample SD of T_CZ / median(T_CZ)
  double t_median_ns = 0.0;
  int n_collapsed = 0;            // samples rejected for barrier collapse
  std::vector<double> bin_center; // of T_CZ / median
  std::vector<int> bin_count;
};

// Monte Carlo over device-to-device separation fluctuations
// L_S ~ N(L_S0, sigma_LS), propagated through the barrier model to t_c,
// exchange, and controlled-phase time.  Sample k draws from an RNG stream
// seeded with (seed xor k), so results are reproducible and independent of
// sample order.
VariabilityResult variability_mc(const WkbModel& m, const GateParams& base,
                                 double l_s0_nm, double v_bg_mV,
                                 const VariabilitySpec& spec);

}  // namespace geqdot::gate
