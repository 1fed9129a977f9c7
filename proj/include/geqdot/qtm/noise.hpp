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

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace geqdot::qtm {

// Charge-noise model for the tunnel coupling: a telegraph-like process
// whose value is redrawn from N(0, A_n^2) at exponentially distributed
// switching times with mean tau.
struct NoiseModel {
  double a_n_ueV = 0.24;
  double tau_ns = 1000.0;

  void validate() const {
    if (!(a_n_ueV >= 0.0))
      throw std::invalid_argument("noise amplitude must be non-negative");
    if (!(tau_ns > 0.0))
      throw std::invalid_argument("switching time must be positive");
  }
};

// One realization of the piecewise-constant process on [0, duration]:
// value[0] holds on [0, switch_ns[0]), value[k] on
// [switch_ns[k-1], switch_ns[k]), and value.back() up to `duration`.
struct NoiseTrajectory {
  std::vector<double> switch_ns;
  std::vector<double> value_ueV;  // size switch_ns.size() + 1
  double duration_ns = 0.0;

  double value_at(double t_ns) const;
};

// Deterministic sampling: the stream is derived from (seed xor index), so
// trajectory k of a batch is reproducible in isolation.  The initial value
// is drawn from the stationary distribution.
NoiseTrajectory sample_rtn(const NoiseModel& model, double duration_ns,
                           uint64_t seed, uint64_t index);

}  // namespace geqdot::qtm
