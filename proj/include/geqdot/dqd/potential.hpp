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

#include <vector>

#include "geqdot/dqd/config.hpp"

namespace geqdot::dqd {

struct PotentialProfile {
  std::vector<double> x_nm;
  std::vector<double> v_meV;
  double dx_nm = 0.0;
};

// Smoothed indicator of [a, b]: 1 inside, 0 outside, erf edges of scale s.
double smooth_box(double x, double a, double b, double s);

// Plunger depth that pins the ground state of one isolated well at
// `level_meV` below the outer region, for the well shape in `cfg`.
// Solved by bisection on the isolated-well grid.
double plunger_depth_for_level(const DqdConfig& cfg, double level_meV);

// Two-well potential with wells of width `well_width_nm` centered at
// +-L_S/2 (L_S is the center-to-center separation) and a smooth confinement
// rise toward `well_depth_meV` at the domain edges.  The plunger depth is
// chosen so the single-dot level sits exactly barrier_height_meV() below
// the inter-dot plateau, which pins the barrier seen by the bound state
// across a sweep.  Throws when the barrier has collapsed (height <= 2 meV).
PotentialProfile build_dqd_potential(const DqdConfig& cfg);

// Single isolated well centered at x = 0, used by the plunger calibration.
PotentialProfile build_isolated_well(const DqdConfig& cfg,
                                     double plunger_meV);

}  // namespace geqdot::dqd
