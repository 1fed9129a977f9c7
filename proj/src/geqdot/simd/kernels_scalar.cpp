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

#include <cmath>

#include "geqdot/simd/kernels.hpp"

namespace geqdot::simd::scalar {

double coulomb_pair_sum(const double* x, const double* y, const double* z,
                        const double* w, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double xi = x[i], yi = y[i], zi = z[i];
    double row = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double dx = xi - x[j];
      const double dy = yi - y[j];
      const double dz = zi - z[j];
      row += w[j] / std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    total += w[i] * row;
  }
  return total;
}

std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double norm2(const std::complex<double>* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void apply_1q(std::complex<double>* amp, std::size_t n, int qubit,
              const std::complex<double> u[4]) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const std::complex<double> lo = amp[i];
      const std::complex<double> hi = amp[i + stride];
      amp[i] = u[0] * lo + u[1] * hi;
      amp[i + stride] = u[2] * lo + u[3] * hi;
    }
  }
}

void apply_2q(std::complex<double>* amp, std::size_t n, int qubit_lo,
              int qubit_hi, const std::complex<double> u[16]) {
  const std::size_t slo = std::size_t{1} << qubit_lo;
  const std::size_t shi = std::size_t{1} << qubit_hi;
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & slo) || (i & shi)) continue;
    const std::size_t idx[4] = {i, i + slo, i + shi, i + slo + shi};
    std::complex<double> v[4];
    for (int k = 0; k < 4; ++k) v[k] = amp[idx[k]];
    for (int r = 0; r < 4; ++r) {
      std::complex<double> acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += u[4 * r + c] * v[c];
      amp[idx[r]] = acc;
    }
  }
}

}  // namespace geqdot::simd::scalar
