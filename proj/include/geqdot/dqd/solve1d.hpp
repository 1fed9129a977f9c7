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

#include "geqdot/dqd/potential.hpp"

namespace geqdot::dqd {

struct BoundState {
  double energy_meV = 0.0;
  std::vector<double> psi;  // normalized so sum psi^2 dx = 1
  int nodes = 0;
};

struct BoundStatePair {
  BoundState bonding;       // ground state
  BoundState antibonding;   // first excited state
};

// Lowest states of -hbar^2/(2m) d2/dx2 + V on the given grid with hard
// walls.  Energies in meV, mass in units of m0.
std::vector<BoundState> solve_bound_states(const PotentialProfile& profile,
                                           double mass_over_m0,
                                           int n_states = 2);

// Lowest doublet of a symmetric double well.  Verifies parity (bonding even,
// antibonding odd) and node counts; throws when the doublet is degenerate
// with the wrong symmetry.
BoundStatePair solve_doublet(const PotentialProfile& profile,
                             double mass_over_m0);

}  // namespace geqdot::dqd
