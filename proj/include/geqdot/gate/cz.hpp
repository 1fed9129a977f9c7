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

#include "geqdot/gate/hamiltonian6.hpp"
#include "geqdot/units.hpp"

namespace geqdot::gate {

// Dispersive exchange J = 2 t_c^2 (U1 + U2) / ((U1 - eps)(U2 + eps)),
// in ueV.  Throws when a charging denominator is not positive.
double exchange_ueV(const GateParams& p);

// Effective two-spin Hamiltonian after eliminating the doubly occupied
// singlets: diagonal Zeeman terms for the polarized states and an exchange
// block on the antiparallel pair.  Basis 00, 01, 10, 11; entries in ueV.
Eigen::Matrix4d effective_h_ueV(const GateParams& p);

// Exact eigenbasis of the 6-level model, with the four eigenstates that
// adiabatically connect to the computational basis identified by maximum
// overlap.
struct DressedFrame {
  Matrix6d h0_ueV;
  Vector6d evals_ueV;
  Matrix6d evecs;                       // columns, ascending energy
  std::array<int, 4> comp_col{};        // eigencolumn of each dressed state
  std::array<double, 4> comp_energy_ueV{};
};

DressedFrame dress(const GateParams& p);

// Exchange defined from the exact antiparallel eigenenergies,
// J = -(E_01 + E_10); the polarized energies sum to zero.
double exact_exchange_ueV(const DressedFrame& f);

struct CzTiming {
  double j_ueV = 0.0;          // dispersive exchange used for the duration
  double t_cz_ns = 0.0;        // pi hbar / J
  double cond_phase_rad = 0.0; // exact conditional phase accumulated in t_cz
  double phase_error = 0.0;    // | |phase| - pi | / pi
};

// Controlled-phase duration from the dispersive exchange, with the exact
// conditional phase evaluated in the dressed frame as a consistency
// diagnostic.
CzTiming cz_gate_time(const GateParams& p);

inline double cz_time_ns(double j_ueV) {
  return units::kPi * units::kHbar_ueV_ns / j_ueV;
}

}  // namespace geqdot::gate
