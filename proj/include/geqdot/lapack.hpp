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

namespace geqdot::lapack {

struct HermEigResult {
  std::vector<double> values;                          // ascending
  std::vector<std::vector<std::complex<double>>> vectors;  // one per value
};

struct TridiagEigResult {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // one per value
};

// Banded Hermitian matrix in upper-band storage: band(k, j) with
// k = kd + i - j holds A(i, j) for j - kd <= i <= j, column-major packing
// band[j * (kd + 1) + k]. Returns the il-th..iu-th smallest eigenpairs
// (1-based, inclusive). Throws on solver failure.
HermEigResult eig_banded_range(const std::vector<std::complex<double>>& band,
                               int n, int kd, int il, int iu);

// Symmetric tridiagonal eigenproblem; returns the il-th..iu-th smallest
// eigenpairs (1-based, inclusive).
TridiagEigResult eig_tridiag_range(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag, int il,
                                   int iu);

}  // namespace geqdot::lapack
