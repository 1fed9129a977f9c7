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
#include <cstdint>

#include <Eigen/Dense>

#include "geqdot/gate/cz.hpp"
#include "geqdot/qtm/noise.hpp"

namespace geqdot::circuit {

// Controlled-phase gate realized by the 6-level exchange model.  The
// duration is pi hbar over the exact exchange, and fixed single-qubit
// Z-frame phases calibrate the noiseless gate to diag(1, 1, 1, -1).
struct CzGateModel {
  gate::GateParams params;
  qtm::NoiseModel noise;
  gate::DressedFrame frame;
  double j_exact_ueV = 0.0;
  double t_cz_ns = 0.0;
  std::array<double, 4> frame_phase{};  // applied per computational state
  double max_leakage = 0.01;
};

CzGateModel make_cz_gate(const gate::GateParams& p,
                         const qtm::NoiseModel& noise);

Eigen::Matrix4cd ideal_cz();

// One noisy realization: evolve the 6-level model under a fresh noise
// trajectory for the gate duration, project onto the dressed computational
// basis, apply the calibration frame, and renormalize the columns.  Throws
// when leakage out of the computational space exceeds `max_leakage`.
// The matrix is indexed by v = s_a * 2 + s_b for the edge's (a, b) order.
Eigen::Matrix4cd sample_noisy_cz(const CzGateModel& g, uint64_t seed,
                                 uint64_t index,
                                 double* leakage_out = nullptr);

// Noiseless limit of the same pipeline (equals ideal_cz to rounding).
Eigen::Matrix4cd noiseless_cz(const CzGateModel& g);

}  // namespace geqdot::circuit
