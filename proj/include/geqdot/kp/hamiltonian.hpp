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
#include <vector>

#include <Eigen/Dense>

#include "geqdot/kp/profile.hpp"

namespace geqdot::kp {

// Hermitian band matrix stored in the upper-band column-major layout used by
// LAPACK zhbevx: element (i, j) with j >= i and j - i <= kd lives at
// data[j * (kd + 1) + (kd + i - j)].
class BandedHermitian {
 public:
  BandedHermitian(int n, int kd)
      : n_(n), kd_(kd), data_(static_cast<size_t>(n) * (kd + 1)) {}

  int size() const { return n_; }
  int bandwidth() const { return kd_; }
  const std::vector<std::complex<double>>& storage() const { return data_; }

  // Upper-triangle accessor; callers must pass i <= j <= i + kd.
  std::complex<double>& at(int i, int j) {
    return data_[static_cast<size_t>(j) * (kd_ + 1) + (kd_ + i - j)];
  }
  std::complex<double> at(int i, int j) const {
    return data_[static_cast<size_t>(j) * (kd_ + 1) + (kd_ + i - j)];
  }

  // Full dense matrix, for tests and small problems.
  Eigen::MatrixXcd to_dense() const;

 private:
  int n_;
  int kd_;
  std::vector<std::complex<double>> data_;
};

// Four-band Luttinger-Kohn Hamiltonian in the hole-energy convention on the
// finite-difference grid of `grid`, at fixed in-plane momentum (kx, ky) in
// 1/nm.  Basis ordering per grid point: HH(+3/2), LH(+1/2), LH(-1/2),
// HH(-3/2).  The z-direction kinetic terms use flux-continuous averaging of
// the material coefficients between neighboring points; hard-wall boundary
// conditions apply at both ends.  Energies are in eV.
BandedHermitian assemble_lk(const GridProfile& grid, double kx, double ky);

constexpr int kLkBandwidth = 5;

}  // namespace geqdot::kp
