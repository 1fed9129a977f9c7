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
#include <vector>

#include "geqdot/circuit/circuit.hpp"
#include "geqdot/circuit/noisy_cz.hpp"
#include "geqdot/circuit/state.hpp"
#include "geqdot/circuit/topology.hpp"

namespace geqdot::circuit {

// Hardware-efficient ansatz: an Euler rotation layer (RZ RX RZ per qubit),
// then per stage a controlled-phase layer over every topology edge followed
// by another rotation layer.  Needs 3 * n_qubits * (n_stages + 1) angles.
Circuit build_vqe_ansatz(const QdArrayTopology& topo, int n_stages,
                         const std::vector<double>& angles,
                         bool with_entanglers = true);

// Pseudo-random angles, uniform in [0, 2 pi), reproducible from the seed.
std::vector<double> ansatz_angles(const QdArrayTopology& topo, int n_stages,
                                  uint64_t seed);

// Noiseless execution from |0...0>.
StateVector run_ideal(const Circuit& c);

// Monte Carlo execution: every controlled-phase instruction of trajectory k
// draws a fresh noise realization through the shared gate model.  CZ
// instructions must match a topology edge.
std::vector<Eigen::VectorXcd> run_noisy(const Circuit& c,
                                        const QdArrayTopology& topo,
                                        const CzGateModel& g, int n_traj,
                                        uint64_t seed);

struct FidelityPoint {
  int n_stages = 0;
  double fidelity = 0.0;
  double std_err = 0.0;
  int n_traj = 0;
};

// State fidelity of the noisy ansatz against its noiseless version, as a
// function of circuit depth.
std::vector<FidelityPoint> ansatz_fidelity_vs_depth(
    const QdArrayTopology& topo, const CzGateModel& g,
    const std::vector<int>& stage_counts, int n_traj, uint64_t seed);

}  // namespace geqdot::circuit
