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
#include <vector>

#include "geqdot/kp/material.hpp"

namespace geqdot::kp {

struct Layer {
  Material material;
  double thickness_nm = 0.0;
  // Band-edge offset of this layer relative to the well (eV).  Holes are
  // confined where the offset is zero; barriers carry a negative offset in
  // the hole-energy convention used here.
  double band_offset_eV = 0.0;
  bool strained = false;
};

struct HeterostructureProfile {
  std::vector<Layer> layers;
  StrainState strain;
  double dz_nm = 0.25;

  double total_thickness_nm() const {
    double t = 0.0;
    for (const Layer& l : layers) t += l.thickness_nm;
    return t;
  }
};

// Barrier / well / barrier stack with hard walls at the outer edges.
// `strained` applies the biaxial strain shifts inside the well layer only;
// the relaxed barriers carry no strain shift.
HeterostructureProfile default_stack(const Material& well,
                                     const Material& barrier,
                                     double well_nm = 20.0,
                                     double barrier_nm = 30.0,
                                     double band_offset_eV = 0.3,
                                     bool strained = true,
                                     double dz_nm = 0.25);

// Per-grid-point view of a profile.  Points live at z = dz, 2 dz, ..., L - dz
// (hard walls at z = 0 and z = L are excluded).
struct GridProfile {
  int n = 0;
  double dz_nm = 0.0;
  std::vector<double> z_nm;
  std::vector<double> gamma1, gamma2, gamma3;
  // Diagonal band-edge terms per point (eV): band offset plus strain shift.
  std::vector<double> edge_hh_eV, edge_lh_eV;
};

GridProfile discretize(const HeterostructureProfile& profile);

}  // namespace geqdot::kp
