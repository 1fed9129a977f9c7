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

#include <string>
#include <vector>

#include "geqdot/dqd/config.hpp"
#include "geqdot/dqd/solve1d.hpp"

namespace geqdot::dqd {

// Bare tunnel splitting of the 1-D doublet: half the bonding/antibonding
// gap, in ueV.
double tunnel_splitting_ueV(const BoundStatePair& pair);

struct SweepPoint {
  double l_s_nm = 0.0;
  double v_bg_mV = 0.0;
  double t_c_ueV = 0.0;   // saddle-scaled coupling; NaN when invalid
  bool valid = false;
  std::string note;
};

// Tunnel coupling over a grid of separation lengths and barrier-gate
// voltages.  Each point solves the 1-D doublet and scales the bare
// splitting by the saddle transmission factor.  Collapsed-barrier points
// are flagged invalid instead of aborting the sweep.
std::vector<SweepPoint> tc_sweep(const DqdConfig& base,
                                 const std::vector<double>& l_s_nm,
                                 const std::vector<double>& v_bg_mV);

// Coupling at a single operating point (throws on collapsed barrier).
double tunnel_coupling_at(const DqdConfig& cfg);

}  // namespace geqdot::dqd
