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

namespace geqdot::units {

// hbar^2 / (2 m0) in eV nm^2. Energies in the band solver are eV, lengths nm.
inline constexpr double kC0_eV_nm2 = 0.0381;

// Same constant in meV nm^2, used by the effective-mass 1-D solver.
inline constexpr double kC0_meV_nm2 = 38.1;

// hbar in meV ns (equivalently ueV us).
inline constexpr double kHbar_meV_ns = 6.582119569e-4;

// hbar in ueV ns, the natural scale for exchange dynamics.
inline constexpr double kHbar_ueV_ns = 0.6582119569;

// Coulomb constant q^2 / (4 pi eps0) in meV nm.
inline constexpr double kCoulomb_meV_nm = 1439.9645;

// Mean inverse distance between two points uniformly distributed in a unit
// cube; used for the self-cell term of the gridded Coulomb integrator.
inline constexpr double kCubeMeanInvDist = 1.8823126;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace geqdot::units
