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
#include <string>

namespace geqdot::kp {

struct Material {
  std::string name;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double valence_band_edge_eV = 0.0;
  double dielectric_constant = 0.0;

  void validate() const {
    if (!(gamma1 > 0.0))
      throw std::invalid_argument(name + ": gamma1 must be positive");
    if (!(gamma1 > 2.0 * gamma2))
      throw std::invalid_argument(name +
                                  ": gamma1 > 2*gamma2 required for a "
                                  "positive heavy-hole z-mass");
  }
};

inline Material material_ge() {
  return {"Ge", 13.25, 4.20, 5.56, 0.0, 16.0};
}

inline Material material_si() {
  return {"Si", 4.26, 0.34, 1.45, 0.0, 11.7};
}

// Si(1-x)Ge(x) barrier alloy; Luttinger parameters interpolated linearly
// between the Si and Ge endpoints.
inline Material material_sige(double x_ge = 0.8) {
  const Material si = material_si();
  const Material ge = material_ge();
  Material m;
  m.name = "Si" + std::to_string(1.0 - x_ge).substr(0, 3) + "Ge" +
           std::to_string(x_ge).substr(0, 3);
  m.gamma1 = (1.0 - x_ge) * si.gamma1 + x_ge * ge.gamma1;
  m.gamma2 = (1.0 - x_ge) * si.gamma2 + x_ge * ge.gamma2;
  m.gamma3 = (1.0 - x_ge) * si.gamma3 + x_ge * ge.gamma3;
  m.valence_band_edge_eV = 0.0;
  m.dielectric_constant = 15.2;
  return m;
}

// Gate oxide; enters only through its dielectric constant.
inline double al2o3_dielectric_constant() { return 9.8; }

struct StrainState {
  double eps_xx = -0.006;
  double eps_yy = -0.006;
  double eps_zz = 0.0042;
  double a_v_eV = 2.0;
  double b_v_eV = -2.3;

  // Diagonal strain shift added to the heavy-hole blocks (eV).
  double hh_shift_eV() const { return -a_v_eV * (eps_xx + eps_yy + eps_zz); }

  // Diagonal strain shift added to the light-hole blocks (eV).
  double lh_shift_eV() const {
    return -0.5 * b_v_eV * (eps_xx + eps_yy - 2.0 * eps_zz);
  }

  static StrainState relaxed() { return {0.0, 0.0, 0.0, 2.0, -2.3}; }
};

}  // namespace geqdot::kp
