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

#include "geqdot/gate/hamiltonian6.hpp"
#include "geqdot/qtm/noise.hpp"

namespace geqdot::qtm {

using gate::Matrix6cd;
using gate::Matrix6d;
using gate::Vector6cd;

// State of the 6-level system along one noise realization, evaluated at the
// requested times (sorted, within [0, duration]).  The evolution is exact
// within each constant-noise interval via eigendecomposition of
// H0 + noise_pattern(delta).
std::vector<Vector6cd> evolve_trajectory(const Vector6cd& psi0,
                                         const Matrix6d& h0_ueV,
                                         const NoiseTrajectory& noise,
                                         const std::vector<double>& t_ns);

// Full propagators U(t, 0) at the requested times.
std::vector<Matrix6cd> evolve_propagators(const Matrix6d& h0_ueV,
                                          const NoiseTrajectory& noise,
                                          const std::vector<double>& t_ns);

// Mean overlap fidelity |<ideal|psi_k>|^2 over an ensemble, with the
// standard error of the mean.
double ensemble_fidelity(const Eigen::VectorXcd& ideal,
                         const std::vector<Eigen::VectorXcd>& ensemble,
                         double* std_err = nullptr);

// Purity tr(rho^2) of the ensemble-averaged density matrix.
double ensemble_purity(const std::vector<Eigen::VectorXcd>& ensemble);

}  // namespace geqdot::qtm
