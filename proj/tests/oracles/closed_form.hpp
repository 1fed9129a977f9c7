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

// Textbook closed forms used as oracles.  Each is written from the
// analytic expression directly, sharing no code with the implementations
// under test.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "geqdot/units.hpp"

namespace geqdot::oracles {

// Infinite-well level n (n = 1, 2, ...) for stiffness B = c0/(m*/m0):
// E_n = B (n pi / L)^2 above the well floor.
inline double infinite_well_level(int n, double width_nm, double mass_over_m0,
                                  double c0) {
  const double k = n * units::kPi / width_nm;
  return c0 / mass_over_m0 * k * k;
}

// Mutual Coulomb energy of two unit charges with identical isotropic
// Gaussian densities of per-axis RMS width sigma.  The separation vector
// is Gaussian with variance 2 sigma^2 per axis, and <1/r> of an isotropic
// Gaussian of scale s is sqrt(2/pi)/s, giving U = e^2/(4 pi eps0 eps_r) /
// (sigma sqrt(pi)).
inline double gaussian_charging_energy_meV(double sigma_nm, double eps_r) {
  return units::kCoulomb_meV_nm / (eps_r * sigma_nm * std::sqrt(units::kPi));
}

// Quasi-static dephasing envelope: for exchange detuning frozen per shot
// with J ~ N(J0, sigma_J), |<exp(i J t / hbar)>| = exp(-(t/tau)^2) with
// tau = sqrt(2) hbar / sigma_J.
inline double gaussian_envelope(double t_ns, double sigma_j_ueV) {
  const double tau = std::sqrt(2.0) * units::kHbar_ueV_ns / sigma_j_ueV;
  return std::exp(-(t_ns / tau) * (t_ns / tau));
}

// Dense little-endian application of a k-qubit gate on the given qubits,
// written index-by-index without any permutation tricks.
inline std::vector<std::complex<double>> dense_apply(
    const std::vector<std::complex<double>>& amp, const std::vector<int>& qs,
    const std::vector<std::complex<double>>& u) {
  const std::size_t dim = std::size_t{1} << qs.size();
  std::vector<std::complex<double>> out(amp.size(), {0.0, 0.0});
  for (std::size_t idx = 0; idx < amp.size(); ++idx) {
    // Bits of idx on the selected qubits, first listed qubit most
    // significant.
    std::size_t row = 0;
    for (std::size_t b = 0; b < qs.size(); ++b)
      row = row * 2 + ((idx >> qs[b]) & 1u);
    for (std::size_t col = 0; col < dim; ++col) {
      std::size_t src = idx;
      for (std::size_t b = 0; b < qs.size(); ++b) {
        const std::size_t bit = (col >> (qs.size() - 1 - b)) & 1u;
        src = (src & ~(std::size_t{1} << qs[b])) | (bit << qs[b]);
      }
      out[idx] += u[row * dim + col] * amp[src];
    }
  }
  return out;
}

}  // namespace geqdot::oracles
