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

#include <complex>
#include <string>
#include <vector>

#include "geqdot/kp/hamiltonian.hpp"
#include "geqdot/kp/profile.hpp"

namespace geqdot::kp {

enum class SubbandCharacter { kHeavyHole, kLightHole };

struct Subband {
  double energy_eV = 0.0;
  SubbandCharacter character = SubbandCharacter::kHeavyHole;
  double hh_weight = 0.0;
  // Four spinor components per grid point, normalized so that
  // sum_i |psi(z_i)|^2 dz = 1.
  std::vector<std::complex<double>> envelope;
};

// Highest `n_states` hole subbands at fixed (kx, ky), sorted by descending
// energy (topmost hole state first).
std::vector<Subband> solve_subbands(const GridProfile& grid, double kx,
                                    double ky, int n_states);

struct DispersionPoint {
  double k_invnm = 0.0;
  std::vector<double> energies_eV;  // descending
  std::vector<SubbandCharacter> characters;
};

// Subband energies along the direction (cos(theta), sin(theta)) in the
// k-plane, for n_k >= 8 evenly spaced magnitudes in [0, k_max].
std::vector<DispersionPoint> dispersion_sweep(const GridProfile& grid,
                                              double theta_rad, double k_max,
                                              int n_k, int n_states);

struct MassFit {
  double mass_over_m0 = 0.0;
  double curvature_eV_nm2 = 0.0;
  double rel_residual = 0.0;
  bool parabolic_window_ok = true;
  std::string warning;
};

// In-plane effective mass of the topmost subband from a parabolic fit
// E(k) = E0 - C0 k^2 / (m*/m0) over |k| <= k_window.  Sets the warning flag
// when the relative fit residual exceeds `max_rel_residual`.
MassFit extract_effective_mass(const GridProfile& grid, double theta_rad,
                               double k_window = 0.15, int n_k = 6,
                               double max_rel_residual = 0.05);

struct AngleMass {
  double theta_deg = 0.0;
  double mass_over_m0 = 0.0;
};

std::vector<AngleMass> mass_vs_angle(const GridProfile& grid,
                                     const std::vector<double>& thetas_deg,
                                     double k_window = 0.15);

}  // namespace geqdot::kp
