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

#include "geqdot/simd/kernels.hpp"

#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace geqdot::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::optional<Isa>& override_slot() {
  static std::optional<Isa> slot;
  return slot;
}

Isa detect() {
  if (const char* env = std::getenv("GEQDOT_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2") {
      if (!cpu_has_avx2())
        throw std::runtime_error("GEQDOT_SIMD=avx2 but CPU lacks AVX2");
      return Isa::kAvx2;
    }
    throw std::runtime_error("GEQDOT_SIMD must be 'scalar' or 'avx2'");
  }
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

Isa active_isa() {
  if (override_slot()) return *override_slot();
  static const Isa detected = detect();
  return detected;
}

std::string isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

void set_isa_override(Isa isa) {
  if (isa == Isa::kAvx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 override requested on non-AVX2 host");
  override_slot() = isa;
}

void clear_isa_override() { override_slot().reset(); }

double coulomb_pair_sum(const double* x, const double* y, const double* z,
                        const double* w, std::size_t n) {
  return active_isa() == Isa::kAvx2 ? avx2::coulomb_pair_sum(x, y, z, w, n)
                                    : scalar::coulomb_pair_sum(x, y, z, w, n);
}

std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n) {
  return active_isa() == Isa::kAvx2 ? avx2::cdot(a, b, n)
                                    : scalar::cdot(a, b, n);
}

double norm2(const std::complex<double>* a, std::size_t n) {
  return active_isa() == Isa::kAvx2 ? avx2::norm2(a, n) : scalar::norm2(a, n);
}

void apply_1q(std::complex<double>* amp, std::size_t n, int qubit,
              const std::complex<double> u[4]) {
  if (active_isa() == Isa::kAvx2)
    avx2::apply_1q(amp, n, qubit, u);
  else
    scalar::apply_1q(amp, n, qubit, u);
}

void apply_2q(std::complex<double>* amp, std::size_t n, int qubit_lo,
              int qubit_hi, const std::complex<double> u[16]) {
  if (active_isa() == Isa::kAvx2)
    avx2::apply_2q(amp, n, qubit_lo, qubit_hi, u);
  else
    scalar::apply_2q(amp, n, qubit_lo, qubit_hi, u);
}

}  // namespace geqdot::simd
