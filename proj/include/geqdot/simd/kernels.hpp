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
#include <cstddef>
#include <string>

namespace geqdot::simd {

enum class Isa { kScalar, kAvx2 };

// The instruction set the dispatcher resolved at startup (or via override).
Isa active_isa();
std::string isa_name(Isa isa);

// Forces a specific implementation; kAvx2 on unsupported hardware throws.
// The GEQDOT_SIMD environment variable ("scalar" or "avx2") does the same.
void set_isa_override(Isa isa);
void clear_isa_override();

// Sum over unordered pairs i<j of w[i] w[j] / |r_i - r_j| for a point cloud
// in structure-of-arrays layout. The hot loop of the Coulomb integrator.
double coulomb_pair_sum(const double* x, const double* y, const double* z,
                        const double* w, std::size_t n);

// <a|b> = sum conj(a[i]) b[i].
std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n);

// Squared 2-norm of a complex vector.
double norm2(const std::complex<double>* a, std::size_t n);

// In-place 2x2 unitary on the amplitude pairs addressed by one qubit of a
// little-endian 2^k state vector. u is row-major.
void apply_1q(std::complex<double>* amp, std::size_t n, int qubit,
              const std::complex<double> u[4]);

// In-place 4x4 matrix on the amplitude quadruples addressed by a qubit pair.
// Basis order within the quadruple: (q_hi q_lo) = 00, 01, 10, 11 where q_lo
// is the lower qubit index. u is row-major.
void apply_2q(std::complex<double>* amp, std::size_t n, int qubit_lo,
              int qubit_hi, const std::complex<double> u[16]);

// Scalar reference implementations, callable directly by equivalence tests.
namespace scalar {
double coulomb_pair_sum(const double* x, const double* y, const double* z,
                        const double* w, std::size_t n);
std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n);
double norm2(const std::complex<double>* a, std::size_t n);
void apply_1q(std::complex<double>* amp, std::size_t n, int qubit,
              const std::complex<double> u[4]);
void apply_2q(std::complex<double>* amp, std::size_t n, int qubit_lo,
              int qubit_hi, const std::complex<double> u[16]);
}  // namespace scalar

// AVX2 variants; defined in a TU compiled with -mavx2 -mfma. Only reachable
// through the dispatcher after the cpuid check (or tests on capable hosts).
namespace avx2 {
double coulomb_pair_sum(const double* x, const double* y, const double* z,
                        const double* w, std::size_t n);
std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n);
double norm2(const std::complex<double>* a, std::size_t n);
void apply_1q(std::complex<double>* amp, std::size_t n, int qubit,
              const std::complex<double> u[4]);
void apply_2q(std::complex<double>* amp, std::size_t n, int qubit_lo,
              int qubit_hi, const std::complex<double> u[16]);
}  // namespace avx2

}  // namespace geqdot::simd
