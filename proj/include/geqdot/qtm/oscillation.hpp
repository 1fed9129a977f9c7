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

#include "geqdot/gate/cz.hpp"
#include "geqdot/qtm/noise.hpp"

namespace geqdot::qtm {

struct OscillationConfig {
  double t_max_ns = 400.0;
  int n_out = 161;
  int n_traj = 2000;
  uint64_t seed = 12345;
};

struct OscillationResult {
  std::vector<double> t_ns;
  std::vector<double> p_up;          // conditional-phase fringe
  std::vector<double> envelope;      // |ensemble mean of exp(i phi)|
  std::vector<double> envelope_fit;  // exp(-(t/tau_fit)^2)
  double sigma_j_ueV = 0.0;          // quasi-static exchange spread
  double tau_qs_ns = 0.0;            // sqrt(2) hbar / sigma_J
  double tau_fit_ns = 0.0;           // Gaussian decay time fitted to data
  double gamma_fit = 0.0;            // free stretching exponent
  bool decayed = false;              // envelope left the fit band
};

// Exchange-oscillation dephasing under tunnel-coupling noise.  Each
// trajectory evolves the full 6-level model; the conditional phase is read
// from the four dressed-state diagonal propagator elements and averaged
// coherently over the ensemble.
OscillationResult exchange_oscillation(const gate::GateParams& p,
                                       const NoiseModel& noise,
                                       const OscillationConfig& cfg);

}  // namespace geqdot::qtm
