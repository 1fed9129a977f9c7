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

namespace geqdot::circuit {

// Dense state vector over n qubits, little-endian: bit q of the amplitude
// index holds the state of qubit q, with 0 = spin up.
struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amp;

  static StateVector zero_state(int n_qubits);
  double norm() const;
  void normalize();
  Eigen::VectorXcd to_eigen() const;
};

// exp(-i theta X/2) and exp(-i theta Z/2) on qubit q.
void apply_rx(StateVector& st, int q, double theta);
void apply_rz(StateVector& st, int q, double theta);

// General 4x4 gate on the ordered qubit pair (a, b); u is row-major and
// indexed by v = s_a * 2 + s_b.
void apply_two_qubit(StateVector& st, int a, int b,
                     const Eigen::Matrix4cd& u);

}  // namespace geqdot::circuit
