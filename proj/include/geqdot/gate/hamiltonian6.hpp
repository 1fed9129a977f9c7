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

#include <array>
#include <stdexcept>

#include <Eigen/Dense>

namespace geqdot::gate {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;
using Vector6cd = Eigen::Matrix<std::complex<double>, 6, 1>;

// Two-spin operating point of a singly occupied double dot.  Energies are
// given in the units noted per field; the 6-level Hamiltonian itself is
// built in ueV.
struct GateParams {
  double t_c_ueV = 28.4;
  double u1_meV = 11.0;
  double u2_meV = 11.0;
  double detuning_ueV = 0.0;
  double e_z_meV = 1.0;     // mean Zeeman splitting
  double d_e_z_meV = 0.1;   // Zeeman difference between the dots

  void validate() const {
    if (!(t_c_ueV >= 0.0))
      throw std::invalid_argument("tunnel coupling must be non-negative");
    if (!(u1_meV * 1000.0 - detuning_ueV > 0.0) ||
        !(u2_meV * 1000.0 + detuning_ueV > 0.0))
      throw std::invalid_argument(
          "detuning must keep both charging denominators positive");
    if (!(d_e_z_meV != 0.0))
      throw std::invalid_argument("Zeeman difference must be nonzero");
  }

  // True when the perturbative hierarchy t_c << U +- eps underlying the
  // dispersive exchange expressions is well satisfied.
  bool hierarchy_ok() const {
    const double u_min = std::min(u1_meV * 1000.0 - detuning_ueV,
                                  u2_meV * 1000.0 + detuning_ueV);
    return t_c_ueV <= 0.1 * u_min;
  }
};

// Basis ordering of the 6-level model:
//   0: up,up   1: up,down   2: down,up   3: down,down   4: S(2,0)   5: S(0,2)
// The polarized triplet states are tunnel-decoupled; the antiparallel
// states couple to the doubly occupied singlets with amplitudes +-t_c.
Matrix6d build_h0_ueV(const GateParams& p);

// Tunnel-coupling fluctuation delta t_c enters through the same
// antiparallel-to-singlet couplings as t_c itself.
Matrix6d noise_pattern_ueV(double delta_tc_ueV);

}  // namespace geqdot::gate
