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

#include "geqdot/kp/material.hpp"

namespace geqdot::dqd {

// One-dimensional probability distribution on a uniform grid; `weight`
// holds per-cell masses summing to 1.
struct Density1d {
  std::vector<double> coord_nm;
  std::vector<double> weight;
};

// On-site charging energy of a separable density n(x) n(y) n(z), in meV.
// The density is resampled onto an n_cells^3 box spanning +-3 RMS lengths
// per axis; the direct pair sum uses the cell-center distances and a
// mean-inverse-distance self-term for the diagonal cells.
double charging_energy_meV(const Density1d& fx, const Density1d& fy,
                           const Density1d& fz, double dielectric_constant,
                           int n_cells = 32);

// Ground-state density of a smoothed square well of the given size and
// depth, for the lateral directions of a plunger-defined dot.
Density1d plunger_ground_density(double size_nm, double depth_meV,
                                 double mass_over_m0, double dx_nm = 0.05,
                                 double margin_nm = 45.0,
                                 double smooth_nm = 2.0);

// Heavy-hole vertical density of the default barrier/well/barrier stack,
// from the four-band solver at zero in-plane momentum.
Density1d vertical_hh_density(const kp::Material& well,
                              const kp::Material& barrier,
                              double well_nm = 20.0, double barrier_nm = 30.0,
                              double dz_nm = 0.25, bool strained = true);

}  // namespace geqdot::dqd
