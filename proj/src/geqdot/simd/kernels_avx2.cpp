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

#include <immintrin.h>

#include <cmath>

#include "geqdot/simd/kernels.hpp"

namespace geqdot::simd::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Multiplies a register holding two packed complex numbers [r0,i0,r1,i1] by
// the scalar complex c.
inline __m256d cmul2(__m256d v, std::complex<double> c) {
  const __m256d cr = _mm256_set1_pd(c.real());
  const __m256d ci = _mm256_set1_pd(c.imag());
  const __m256d vswap = _mm256_shuffle_pd(v, v, 0b0101);
  return _mm256_fmaddsub_pd(v, cr, _mm256_mul_pd(vswap, ci));
}

}  // namespace

double coulomb_pair_sum(const double* x, const double* y, const double* z,
                        const double* w, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(x[i]);
    const __m256d yi = _mm256_set1_pd(y[i]);
    const __m256d zi = _mm256_set1_pd(z[i]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= i; j += 4) {
      const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(x + j));
      const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(y + j));
      const __m256d dz = _mm256_sub_pd(zi, _mm256_loadu_pd(z + j));
      __m256d r2 = _mm256_mul_pd(dx, dx);
      r2 = _mm256_fmadd_pd(dy, dy, r2);
      r2 = _mm256_fmadd_pd(dz, dz, r2);
      const __m256d inv = _mm256_div_pd(_mm256_loadu_pd(w + j),
                                        _mm256_sqrt_pd(r2));
      acc = _mm256_add_pd(acc, inv);
    }
    double row = hsum(acc);
    for (; j < i; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double dz = z[i] - z[j];
      row += w[j] / std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    total += w[i] * row;
  }
  return total;
}

std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    const __m256d vbs = _mm256_shuffle_pd(vb, vb, 0b0101);
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(va, sign), vbs, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double norm2(const std::complex<double>* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void apply_1q(std::complex<double>* amp, std::size_t n, int qubit,
              const std::complex<double> u[4]) {
  const std::size_t stride = std::size_t{1} << qubit;
  if (stride < 2) {
    scalar::apply_1q(amp, n, qubit, u);
    return;
  }
  double* p = reinterpret_cast<double*>(amp);
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; i += 2) {
      double* plo = p + 2 * i;
      double* phi = p + 2 * (i + stride);
      const __m256d lo = _mm256_loadu_pd(plo);
      const __m256d hi = _mm256_loadu_pd(phi);
      const __m256d nlo = _mm256_add_pd(cmul2(lo, u[0]), cmul2(hi, u[1]));
      const __m256d nhi = _mm256_add_pd(cmul2(lo, u[2]), cmul2(hi, u[3]));
      _mm256_storeu_pd(plo, nlo);
      _mm256_storeu_pd(phi, nhi);
    }
  }
}

void apply_2q(std::complex<double>* amp, std::size_t n, int qubit_lo,
              int qubit_hi, const std::complex<double> u[16]) {
  const std::size_t slo = std::size_t{1} << qubit_lo;
  const std::size_t shi = std::size_t{1} << qubit_hi;
  if (slo < 2) {
    scalar::apply_2q(amp, n, qubit_lo, qubit_hi, u);
    return;
  }
  double* p = reinterpret_cast<double*>(amp);
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & slo) || (i & shi)) continue;
    if (i % 2 == 0 && ((i + 1) & slo) == 0 && ((i + 1) & shi) == 0) {
      // Two adjacent base indices share the quadruple structure.
      double* q0 = p + 2 * i;
      double* q1 = p + 2 * (i + slo);
      double* q2 = p + 2 * (i + shi);
      double* q3 = p + 2 * (i + slo + shi);
      const __m256d v0 = _mm256_loadu_pd(q0);
      const __m256d v1 = _mm256_loadu_pd(q1);
      const __m256d v2 = _mm256_loadu_pd(q2);
      const __m256d v3 = _mm256_loadu_pd(q3);
      for (int r = 0; r < 4; ++r) {
        __m256d acc = cmul2(v0, u[4 * r + 0]);
        acc = _mm256_add_pd(acc, cmul2(v1, u[4 * r + 1]));
        acc = _mm256_add_pd(acc, cmul2(v2, u[4 * r + 2]));
        acc = _mm256_add_pd(acc, cmul2(v3, u[4 * r + 3]));
        double* out = r == 0 ? q0 : r == 1 ? q1 : r == 2 ? q2 : q3;
        _mm256_storeu_pd(out, acc);
      }
      ++i;  // consumed i and i+1
      continue;
    }
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

}  // namespace geqdot::simd::avx2
