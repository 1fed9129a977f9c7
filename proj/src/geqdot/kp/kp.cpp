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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "geqdot/kp/hamiltonian.hpp"
#include "geqdot/kp/profile.hpp"
#include "geqdot/kp/solve.hpp"
#include "geqdot/lapack.hpp"
#include "geqdot/units.hpp"

namespace geqdot::kp {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

}  // namespace

HeterostructureProfile default_stack(const Material& well,
                                     const Material& barrier, double well_nm,
                                     double barrier_nm, double band_offset_eV,
                                     bool strained, double dz_nm) {
  well.validate();
  barrier.validate();
  HeterostructureProfile p;
  p.dz_nm = dz_nm;
  p.strain = StrainState{};
  p.layers.push_back({barrier, barrier_nm, -band_offset_eV, false});
  p.layers.push_back({well, well_nm, 0.0, strained});
  p.layers.push_back({barrier, barrier_nm, -band_offset_eV, false});
  return p;
}

GridProfile discretize(const HeterostructureProfile& profile) {
  if (profile.layers.empty())
    throw std::invalid_argument("profile has no layers");
  if (!(profile.dz_nm > 0.0) || profile.dz_nm > 0.5)
    throw std::invalid_argument("grid step must be in (0, 0.5] nm");
  for (const Layer& l : profile.layers) {
    l.material.validate();
    if (!(l.thickness_nm > 0.0))
      throw std::invalid_argument("layer thickness must be positive");
  }

  const double L = profile.total_thickness_nm();
  const int n = static_cast<int>(std::lround(L / profile.dz_nm)) - 1;
  if (n < 8) throw std::invalid_argument("stack too thin for the grid step");

  std::vector<double> bounds;  // cumulative layer end coordinates
  double acc = 0.0;
  for (const Layer& l : profile.layers) {
    acc += l.thickness_nm;
    bounds.push_back(acc);
  }

  GridProfile g;
  g.n = n;
  g.dz_nm = profile.dz_nm;
  g.z_nm.resize(n);
  g.gamma1.resize(n);
  g.gamma2.resize(n);
  g.gamma3.resize(n);
  g.edge_hh_eV.resize(n);
  g.edge_lh_eV.resize(n);

  for (int i = 0; i < n; ++i) {
    const double z = (i + 1) * profile.dz_nm;
    g.z_nm[i] = z;
    size_t k = 0;
    while (k + 1 < profile.layers.size() && z > bounds[k] + 1e-9) ++k;
    // Points sitting exactly on an interface take the barrier-side
    // parameters (the neighbor with the lower band edge).
    if (k + 1 < profile.layers.size() && std::abs(z - bounds[k]) < 1e-9 &&
        profile.layers[k + 1].band_offset_eV <
            profile.layers[k].band_offset_eV) {
      ++k;
    }
    const Layer& lay = profile.layers[k];
    g.gamma1[i] = lay.material.gamma1;
    g.gamma2[i] = lay.material.gamma2;
    g.gamma3[i] = lay.material.gamma3;
    double ehh = lay.band_offset_eV + lay.material.valence_band_edge_eV;
    double elh = ehh;
    if (lay.strained) {
      ehh += profile.strain.hh_shift_eV();
      elh += profile.strain.lh_shift_eV();
    }
    g.edge_hh_eV[i] = ehh;
    g.edge_lh_eV[i] = elh;
  }
  return g;
}

Eigen::MatrixXcd BandedHermitian::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = std::max(0, j - kd_); i <= j; ++i) {
      m(i, j) = at(i, j);
      m(j, i) = std::conj(at(i, j));
    }
  }
  return m;
}

BandedHermitian assemble_lk(const GridProfile& grid, double kx, double ky) {
  const int n = grid.n;
  const double dz = grid.dz_nm;
  const double dz2 = dz * dz;
  const double kpar2 = kx * kx + ky * ky;
  const double c0 = units::kC0_eV_nm2;

  // Per-point coefficients: z-kinetic prefactors, diagonal terms, and the
  // in-plane coupling amplitudes.
  std::vector<double> b_hh(n), b_lh(n), d_hh(n), d_lh(n);
  std::vector<complex<double>> r_c(n), a_c(n);
  for (int i = 0; i < n; ++i) {
    const double g1 = grid.gamma1[i];
    const double g2 = grid.gamma2[i];
    const double g3 = grid.gamma3[i];
    b_hh[i] = c0 * (g1 - 2.0 * g2);
    b_lh[i] = c0 * (g1 + 2.0 * g2);
    d_hh[i] = grid.edge_hh_eV[i] - c0 * (g1 + g2) * kpar2;
    d_lh[i] = grid.edge_lh_eV[i] - c0 * (g1 - g2) * kpar2;
    r_c[i] = -std::sqrt(3.0) * c0 *
             (-g3 * (kx * kx - ky * ky) + 2.0 * kI * g2 * kx * ky);
    a_c[i] = 2.0 * std::sqrt(3.0) * c0 * g3 * complex<double>(kx, -ky);
  }

  BandedHermitian h(4 * n, kLkBandwidth);

  for (int i = 0; i < n; ++i) {
    // Flux-continuous neighbor averages; hard walls use the on-site value
    // for the missing neighbor.
    const double bp_hh = 0.5 * (b_hh[i] + b_hh[std::min(i + 1, n - 1)]);
    const double bm_hh = 0.5 * (b_hh[i] + b_hh[std::max(i - 1, 0)]);
    const double bp_lh = 0.5 * (b_lh[i] + b_lh[std::min(i + 1, n - 1)]);
    const double bm_lh = 0.5 * (b_lh[i] + b_lh[std::max(i - 1, 0)]);

    const double diag_hh = -(bp_hh + bm_hh) / dz2 + d_hh[i];
    const double diag_lh = -(bp_lh + bm_lh) / dz2 + d_lh[i];
    h.at(4 * i + 0, 4 * i + 0) = diag_hh;
    h.at(4 * i + 1, 4 * i + 1) = diag_lh;
    h.at(4 * i + 2, 4 * i + 2) = diag_lh;
    h.at(4 * i + 3, 4 * i + 3) = diag_hh;

    // Same-site in-plane coupling R in the (HH+, LH-) and (LH+, HH-) blocks.
    h.at(4 * i + 0, 4 * i + 2) = r_c[i];
    h.at(4 * i + 1, 4 * i + 3) = r_c[i];

    if (i + 1 < n) {
      // Same-component hopping.
      h.at(4 * i + 0, 4 * (i + 1) + 0) = bp_hh / dz2;
      h.at(4 * i + 1, 4 * (i + 1) + 1) = bp_lh / dz2;
      h.at(4 * i + 2, 4 * (i + 1) + 2) = bp_lh / dz2;
      h.at(4 * i + 3, 4 * (i + 1) + 3) = bp_hh / dz2;

      // First-order k_z coupling, symmetrized between neighbors.  The two
      // spin sectors carry opposite signs.
      for (const auto& [a, b, sgn] :
           {std::tuple<int, int, double>{0, 1, +1.0}, {2, 3, -1.0}}) {
        const complex<double> cf =
            -kI / (4.0 * dz) * sgn * (a_c[i] + a_c[i + 1]);
        h.at(4 * i + a, 4 * (i + 1) + b) += cf;
        h.at(4 * i + b, 4 * (i + 1) + a) += std::conj(-cf);
      }
    }
  }
  return h;
}

std::vector<Subband> solve_subbands(const GridProfile& grid, double kx,
                                    double ky, int n_states) {
  if (n_states < 1) throw std::invalid_argument("n_states must be >= 1");
  const int n = 4 * grid.n;
  if (n_states > n) throw std::invalid_argument("n_states exceeds basis size");

  BandedHermitian h = assemble_lk(grid, kx, ky);
  lapack::HermEigResult eig = lapack::eig_banded_range(
      h.storage(), n, kLkBandwidth, n - n_states + 1, n);

  const double inv_sqrt_dz = 1.0 / std::sqrt(grid.dz_nm);
  std::vector<Subband> out(n_states);
  for (int s = 0; s < n_states; ++s) {
    // LAPACK returns ascending energies; report topmost hole state first.
    const int src = n_states - 1 - s;
    Subband& sb = out[s];
    sb.energy_eV = eig.values[src];
    sb.envelope.resize(n);
    double hhw = 0.0;
    for (int i = 0; i < n; ++i) {
      const complex<double> v = eig.vectors[src][i] * inv_sqrt_dz;
      sb.envelope[i] = v;
      const int comp = i % 4;
      if (comp == 0 || comp == 3) hhw += std::norm(v) * grid.dz_nm;
    }
    sb.hh_weight = hhw;
    sb.character = hhw >= 0.5 ? SubbandCharacter::kHeavyHole
                              : SubbandCharacter::kLightHole;
  }
  return out;
}

std::vector<DispersionPoint> dispersion_sweep(const GridProfile& grid,
                                              double theta_rad, double k_max,
                                              int n_k, int n_states) {
  if (n_k < 8)
    throw std::invalid_argument("dispersion sweep needs at least 8 k points");
  if (!(k_max > 0.0)) throw std::invalid_argument("k_max must be positive");

  const double cx = std::cos(theta_rad);
  const double cy = std::sin(theta_rad);
  std::vector<DispersionPoint> out;
  out.reserve(n_k);
  for (int j = 0; j < n_k; ++j) {
    const double k = k_max * j / (n_k - 1);
    auto bands = solve_subbands(grid, k * cx, k * cy, n_states);
    DispersionPoint p;
    p.k_invnm = k;
    for (int s = 0; s < n_states; ++s) {
      p.energies_eV.push_back(bands[s].energy_eV);
      SubbandCharacter c = bands[s].character;
      // Near 50/50 mixing the weight label is unstable; keep the label from
      // the previous k point for continuity.
      if (!out.empty() && bands[s].hh_weight > 0.45 &&
          bands[s].hh_weight < 0.55) {
        c = out.back().characters[s];
      }
      p.characters.push_back(c);
    }
    out.push_back(std::move(p));
  }
  return out;
}

MassFit extract_effective_mass(const GridProfile& grid, double theta_rad,
                               double k_window, int n_k,
                               double max_rel_residual) {
  if (n_k < 3) throw std::invalid_argument("mass fit needs at least 3 points");
  if (!(k_window > 0.0)) throw std::invalid_argument("k_window must be > 0");

  const double cx = std::cos(theta_rad);
  const double cy = std::sin(theta_rad);
  std::vector<double> k2(n_k), e(n_k);
  for (int j = 0; j < n_k; ++j) {
    const double k = k_window * j / (n_k - 1);
    auto top = solve_subbands(grid, k * cx, k * cy, 1);
    k2[j] = k * k;
    e[j] = top[0].energy_eV;
  }

  // Least squares for E = e0 + c * k^2.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int j = 0; j < n_k; ++j) {
    sx += k2[j];
    sy += e[j];
    sxx += k2[j] * k2[j];
    sxy += k2[j] * e[j];
  }
  const double denom = n_k * sxx - sx * sx;
  const double c = (n_k * sxy - sx * sy) / denom;
  const double e0 = (sy - c * sx) / n_k;

  MassFit fit;
  fit.curvature_eV_nm2 = c;
  if (!(c < 0.0)) {
    fit.parabolic_window_ok = false;
    fit.warning = "top band curvature is not hole-like in the fit window";
    fit.mass_over_m0 = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  fit.mass_over_m0 = -units::kC0_eV_nm2 / c;

  const double drop = std::abs(e[0] - e[n_k - 1]);
  double max_dev = 0.0;
  for (int j = 0; j < n_k; ++j)
    max_dev = std::max(max_dev, std::abs(e0 + c * k2[j] - e[j]));
  fit.rel_residual = drop > 0.0 ? max_dev / drop : 0.0;
  if (fit.rel_residual > max_rel_residual) {
    fit.parabolic_window_ok = false;
    fit.warning = "parabolic fit residual exceeds threshold; band is "
                  "nonparabolic in the chosen window";
  }
  return fit;
}

std::vector<AngleMass> mass_vs_angle(const GridProfile& grid,
                                     const std::vector<double>& thetas_deg,
                                     double k_window) {
  std::vector<AngleMass> out;
  out.reserve(thetas_deg.size());
  for (double th : thetas_deg) {
    MassFit f =
        extract_effective_mass(grid, th * units::kPi / 180.0, k_window);
    out.push_back({th, f.mass_over_m0});
  }
  return out;
}

}  // namespace geqdot::kp
