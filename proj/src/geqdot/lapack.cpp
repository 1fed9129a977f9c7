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

#include "geqdot/lapack.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace geqdot::lapack {

HermEigResult eig_banded_range(const std::vector<std::complex<double>>& band,
                               int n, int kd, int il, int iu) {
  if (il < 1 || iu > n || il > iu)
    throw std::invalid_argument("eig_banded_range: bad index range");
  if (static_cast<int>(band.size()) != (kd + 1) * n)
    throw std::invalid_argument("eig_banded_range: band storage size");
  const int m_want = iu - il + 1;
  std::vector<std::complex<double>> ab(band);  // zhbevx overwrites
  std::vector<double> w(n);
  std::vector<std::complex<double>> zvec(
      static_cast<std::size_t>(n) * m_want);
  std::vector<std::complex<double>> q(static_cast<std::size_t>(n) * n);
  std::vector<int> ifail(n);
  int m_found = 0;
  const int info = LAPACKE_zhbevx(
      LAPACK_COL_MAJOR, 'V', 'I', 'U', n, kd,
      reinterpret_cast<lapack_complex_double*>(ab.data()), kd + 1,
      reinterpret_cast<lapack_complex_double*>(q.data()), n, 0.0, 0.0, il, iu,
      2.0 * LAPACKE_dlamch('S'), &m_found, w.data(),
      reinterpret_cast<lapack_complex_double*>(zvec.data()), n, ifail.data());
  if (info != 0)
    throw std::runtime_error("zhbevx failed, info=" + std::to_string(info));
  if (m_found != m_want)
    throw std::runtime_error("zhbevx converged " + std::to_string(m_found) +
                             " of " + std::to_string(m_want) + " eigenpairs");
  HermEigResult out;
  out.values.assign(w.begin(), w.begin() + m_found);
  out.vectors.resize(m_found);
  for (int j = 0; j < m_found; ++j)
    out.vectors[j].assign(zvec.begin() + static_cast<std::size_t>(j) * n,
                          zvec.begin() + static_cast<std::size_t>(j + 1) * n);
  return out;
}

TridiagEigResult eig_tridiag_range(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag, int il,
                                   int iu) {
  const int n = static_cast<int>(diag.size());
  if (static_cast<int>(offdiag.size()) != n - 1)
    throw std::invalid_argument("eig_tridiag_range: offdiag size");
  if (il < 1 || iu > n || il > iu)
    throw std::invalid_argument("eig_tridiag_range: bad index range");
  const int m_want = iu - il + 1;
  std::vector<double> d(diag), e(offdiag);
  e.resize(n);  // dstevr wants length n scratch
  std::vector<double> w(n);
  std::vector<double> zvec(static_cast<std::size_t>(n) * m_want);
  std::vector<int> isuppz(2 * m_want);
  int m_found = 0;
  const int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(),
                                  e.data(), 0.0, 0.0, il, iu,
                                  LAPACKE_dlamch('S'), &m_found, w.data(),
                                  zvec.data(), n, isuppz.data());
  if (info != 0)
    throw std::runtime_error("dstevr failed, info=" + std::to_string(info));
  if (m_found != m_want)
    throw std::runtime_error("dstevr converged " + std::to_string(m_found) +
                             " of " + std::to_string(m_want) + " eigenpairs");
  TridiagEigResult out;
  out.values.assign(w.begin(), w.begin() + m_found);
  out.vectors.resize(m_found);
  for (int j = 0; j < m_found; ++j)
    out.vectors[j].assign(zvec.begin() + static_cast<std::size_t>(j) * n,
                          zvec.begin() + static_cast<std::size_t>(j + 1) * n);
  return out;
}

}  // namespace geqdot::lapack
