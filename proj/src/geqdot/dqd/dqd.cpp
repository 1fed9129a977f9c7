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
#include <limits>
#include <map>
#include <stdexcept>

#include "geqdot/dqd/config.hpp"
#include "geqdot/dqd/coulomb.hpp"
#include "geqdot/dqd/potential.hpp"
#include "geqdot/dqd/solve1d.hpp"
#include "geqdot/dqd/tunnel.hpp"
#include "geqdot/kp/material.hpp"
#include "geqdot/kp/profile.hpp"
#include "geqdot/kp/solve.hpp"
#include "geqdot/lapack.hpp"
#include "geqdot/simd/kernels.hpp"
#include "geqdot/units.hpp"

namespace geqdot::dqd {

namespace {

std::vector<double> make_grid(double half_extent, double dx) {
  const int n = static_cast<int>(std::floor(2.0 * half_extent / dx + 0.5)) + 1;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = -half_extent + i * dx;
  return x;
}

PotentialProfile dqd_potential_with_plunger(const DqdConfig& cfg,
                                            double plunger) {
  const double w2 = 0.5 * cfg.well_width_nm;
  const double l2 = 0.5 * cfg.barrier_length_nm;
  const double s = cfg.smooth_nm;
  const double hw = cfg.edge_rise_halfwidth_nm;

  PotentialProfile p;
  p.dx_nm = cfg.dx_nm;
  p.x_nm = make_grid(l2 + w2 + cfg.margin_nm, cfg.dx_nm);
  const double x0 = p.x_nm.front();
  const double x1 = p.x_nm.back();
  p.v_meV.resize(p.x_nm.size());
  for (size_t i = 0; i < p.x_nm.size(); ++i) {
    const double x = p.x_nm[i];
    double v = plunger;
    v -= plunger * smooth_box(x, -l2 - w2, -l2 + w2, s);
    v -= plunger * smooth_box(x, l2 - w2, l2 + w2, s);
    v += (cfg.well_depth_meV - plunger) *
         (smooth_box(x, x0 - hw, x0 + hw, s) +
          smooth_box(x, x1 - hw, x1 + hw, s));
    p.v_meV[i] = v;
  }
  return p;
}

int count_nodes(const std::vector<double>& psi) {
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  const double floor = 1e-8 * peak;
  int nodes = 0;
  double prev = 0.0;
  for (double v : psi) {
    if (std::abs(v) <= floor) continue;
    if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++nodes;
    prev = v;
  }
  return nodes;
}

double mirror_asymmetry(const std::vector<double>& psi, double parity_sign) {
  const size_t n = psi.size();
  double peak = 0.0, dev = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  for (size_t i = 0; i < n; ++i)
    dev = std::max(dev, std::abs(psi[i] - parity_sign * psi[n - 1 - i]));
  return peak > 0.0 ? dev / peak : 0.0;
}

}  // namespace

double smooth_box(double x, double a, double b, double s) {
  const double inv = 1.0 / (std::sqrt(2.0) * s);
  return 0.5 * (std::erf((x - a) * inv) - std::erf((x - b) * inv));
}

PotentialProfile build_isolated_well(const DqdConfig& cfg, double plunger_meV) {
  PotentialProfile p;
  p.dx_nm = cfg.dx_nm;
  p.x_nm = make_grid(0.5 * cfg.well_width_nm + cfg.margin_nm, cfg.dx_nm);
  p.v_meV.resize(p.x_nm.size());
  const double w2 = 0.5 * cfg.well_width_nm;
  for (size_t i = 0; i < p.x_nm.size(); ++i)
    p.v_meV[i] = plunger_meV *
                 (1.0 - smooth_box(p.x_nm[i], -w2, w2, cfg.smooth_nm));
  return p;
}

double plunger_depth_for_level(const DqdConfig& cfg, double level_meV) {
  auto ground = [&](double plunger) {
    PotentialProfile p = build_isolated_well(cfg, plunger);
    return solve_bound_states(p, cfg.mass_over_m0, 1)[0].energy_meV;
  };
  double lo = level_meV + 5.0;
  double hi = level_meV + 60.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid - ground(mid) - level_meV > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

PotentialProfile build_dqd_potential(const DqdConfig& cfg) {
  cfg.validate();
  const double eb = cfg.barrier_height_meV();
  if (eb <= 2.0)
    throw std::runtime_error(
        "barrier collapsed: effective height <= 2 meV at V_BG = " +
        std::to_string(cfg.v_bg_mV) + " mV");
  return dqd_potential_with_plunger(cfg, plunger_depth_for_level(cfg, eb));
}

std::vector<BoundState> solve_bound_states(const PotentialProfile& profile,
                                           double mass_over_m0, int n_states) {
  const int n = static_cast<int>(profile.x_nm.size());
  if (n < 16) throw std::invalid_argument("potential grid too short");
  if (n_states < 1 || n_states > n)
    throw std::invalid_argument("invalid bound state count");
  if (!(mass_over_m0 > 0.0))
    throw std::invalid_argument("mass must be positive");

  const double dx = profile.dx_nm > 0.0
                        ? profile.dx_nm
                        : profile.x_nm[1] - profile.x_nm[0];
  const double kin = units::kC0_meV_nm2 / mass_over_m0;
  std::vector<double> d(n), e(n - 1, -kin / (dx * dx));
  for (int i = 0; i < n; ++i) d[i] = 2.0 * kin / (dx * dx) + profile.v_meV[i];

  lapack::TridiagEigResult eig = lapack::eig_tridiag_range(d, e, 1, n_states);

  std::vector<BoundState> out(n_states);
  const double inv_sqrt_dx = 1.0 / std::sqrt(dx);
  for (int s = 0; s < n_states; ++s) {
    out[s].energy_meV = eig.values[s];
    out[s].psi.resize(n);
    for (int i = 0; i < n; ++i) out[s].psi[i] = eig.vectors[s][i] * inv_sqrt_dx;
    out[s].nodes = count_nodes(out[s].psi);
  }
  return out;
}

BoundStatePair solve_doublet(const PotentialProfile& profile,
                             double mass_over_m0) {
  auto states = solve_bound_states(profile, mass_over_m0, 2);
  BoundStatePair pair{std::move(states[0]), std::move(states[1])};

  if (pair.bonding.nodes != 0)
    throw std::runtime_error("ground state is not nodeless");
  if (pair.antibonding.nodes != 1)
    throw std::runtime_error("first excited state does not have one node");

  // Parity applies only when the potential itself is mirror symmetric.
  double vpeak = 0.0, vdev = 0.0;
  const size_t n = profile.v_meV.size();
  for (size_t i = 0; i < n; ++i) {
    vpeak = std::max(vpeak, std::abs(profile.v_meV[i]));
    vdev = std::max(vdev,
                    std::abs(profile.v_meV[i] - profile.v_meV[n - 1 - i]));
  }
  if (vdev <= 1e-9 * std::max(vpeak, 1.0)) {
    const double asym_even = mirror_asymmetry(pair.bonding.psi, +1.0);
    const double asym_odd = mirror_asymmetry(pair.antibonding.psi, -1.0);
    if (asym_even > 1e-6 || asym_odd > 1e-6) {
      const double gap =
          pair.antibonding.energy_meV - pair.bonding.energy_meV;
      if (gap < 1e-9)
        throw std::runtime_error(
            "degenerate doublet without definite parity");
      throw std::runtime_error("doublet parity check failed");
    }
  }
  return pair;
}

double tunnel_splitting_ueV(const BoundStatePair& pair) {
  return 0.5 * (pair.antibonding.energy_meV - pair.bonding.energy_meV) *
         1000.0;
}

double tunnel_coupling_at(const DqdConfig& cfg) {
  PotentialProfile p = build_dqd_potential(cfg);
  BoundStatePair pair = solve_doublet(p, cfg.mass_over_m0);
  return cfg.saddle_transmission * tunnel_splitting_ueV(pair);
}

std::vector<SweepPoint> tc_sweep(const DqdConfig& base,
                                 const std::vector<double>& l_s_nm,
                                 const std::vector<double>& v_bg_mV) {
  base.validate();
  std::map<double, double> plunger_cache;  // barrier height -> plunger depth
  std::vector<SweepPoint> out;
  out.reserve(l_s_nm.size() * v_bg_mV.size());
  for (double l : l_s_nm) {
    for (double v : v_bg_mV) {
      DqdConfig cfg = base;
      cfg.barrier_length_nm = l;
      cfg.v_bg_mV = v;
      SweepPoint pt;
      pt.l_s_nm = l;
      pt.v_bg_mV = v;
      const double eb = cfg.barrier_height_meV();
      if (eb <= 2.0) {
        pt.t_c_ueV = std::numeric_limits<double>::quiet_NaN();
        pt.valid = false;
        pt.note = "barrier collapsed";
        out.push_back(std::move(pt));
        continue;
      }
      auto [it, inserted] = plunger_cache.try_emplace(eb, 0.0);
      if (inserted) it->second = plunger_depth_for_level(cfg, eb);
      PotentialProfile prof = dqd_potential_with_plunger(cfg, it->second);
      BoundStatePair pair = solve_doublet(prof, cfg.mass_over_m0);
      pt.t_c_ueV = cfg.saddle_transmission * tunnel_splitting_ueV(pair);
      pt.valid = true;
      out.push_back(std::move(pt));
    }
  }
  return out;
}

namespace {

struct ResampledAxis {
  std::vector<double> centers;
  std::vector<double> weight;
  double cell = 0.0;
};

ResampledAxis resample_axis(const Density1d& f, int n_cells) {
  const size_t n = f.coord_nm.size();
  if (n < 2 || f.weight.size() != n)
    throw std::invalid_argument("density needs matching coord/weight arrays");
  const double src_dx = f.coord_nm[1] - f.coord_nm[0];
  if (!(src_dx > 0.0))
    throw std::invalid_argument("density grid must be increasing");

  double total = 0.0;
  for (double w : f.weight) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("density has zero mass");

  double mu = 0.0;
  for (size_t i = 0; i < n; ++i) mu += f.coord_nm[i] * f.weight[i] / total;
  double var = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = f.coord_nm[i] - mu;
    var += d * d * f.weight[i] / total;
  }
  const double rms = std::sqrt(var);
  if (!(rms > 0.0)) throw std::invalid_argument("density has zero extent");

  const double half = 3.0 * rms;
  ResampledAxis ax;
  ax.cell = 2.0 * half / n_cells;
  ax.centers.resize(n_cells);
  ax.weight.resize(n_cells);
  double wsum = 0.0;
  for (int i = 0; i < n_cells; ++i) {
    const double c = -half + half / n_cells + i * ax.cell;
    ax.centers[i] = c;
    // Linear interpolation of the source density (weight per unit length)
    // at the shifted cell center; zero outside the source grid.
    const double t = c + mu;
    double dens = 0.0;
    if (t >= f.coord_nm.front() && t <= f.coord_nm.back()) {
      const double u = (t - f.coord_nm.front()) / src_dx;
      const size_t j = std::min(static_cast<size_t>(u), n - 2);
      const double frac = u - static_cast<double>(j);
      dens = (f.weight[j] * (1.0 - frac) + f.weight[j + 1] * frac) / src_dx;
    }
    ax.weight[i] = std::max(dens, 0.0);
    wsum += ax.weight[i];
  }
  if (!(wsum > 0.0))
    throw std::invalid_argument("density resampling produced zero mass");
  for (double& w : ax.weight) w /= wsum;
  return ax;
}

}  // namespace

double charging_energy_meV(const Density1d& fx, const Density1d& fy,
                           const Density1d& fz, double dielectric_constant,
                           int n_cells) {
  if (n_cells < 8) throw std::invalid_argument("need at least 8 cells");
  if (!(dielectric_constant > 0.0))
    throw std::invalid_argument("dielectric constant must be positive");

  const ResampledAxis ax = resample_axis(fx, n_cells);
  const ResampledAxis ay = resample_axis(fy, n_cells);
  const ResampledAxis az = resample_axis(fz, n_cells);

  const size_t total = static_cast<size_t>(n_cells) * n_cells * n_cells;
  std::vector<double> px(total), py(total), pz(total), w(total);
  size_t idx = 0;
  for (int i = 0; i < n_cells; ++i)
    for (int j = 0; j < n_cells; ++j)
      for (int k = 0; k < n_cells; ++k, ++idx) {
        px[idx] = ax.centers[i];
        py[idx] = ay.centers[j];
        pz[idx] = az.centers[k];
        w[idx] = ax.weight[i] * ay.weight[j] * az.weight[k];
      }

  const double half_sum = simd::coulomb_pair_sum(px.data(), py.data(),
                                                 pz.data(), w.data(), total);
  double w2 = 0.0;
  for (double v : w) w2 += v * v;
  const double a_geo = std::cbrt(ax.cell * ay.cell * az.cell);
  const double self_sum = w2 * units::kCubeMeanInvDist / a_geo;

  return units::kCoulomb_meV_nm / dielectric_constant *
         2.0 * (half_sum + self_sum);
}

Density1d plunger_ground_density(double size_nm, double depth_meV,
                                 double mass_over_m0, double dx_nm,
                                 double margin_nm, double smooth_nm) {
  PotentialProfile p;
  p.dx_nm = dx_nm;
  p.x_nm = make_grid(0.5 * size_nm + margin_nm, dx_nm);
  p.v_meV.resize(p.x_nm.size());
  for (size_t i = 0; i < p.x_nm.size(); ++i)
    p.v_meV[i] = depth_meV * (1.0 - smooth_box(p.x_nm[i], -0.5 * size_nm,
                                               0.5 * size_nm, smooth_nm));
  auto states = solve_bound_states(p, mass_over_m0, 1);
  Density1d d;
  d.coord_nm = p.x_nm;
  d.weight.resize(p.x_nm.size());
  for (size_t i = 0; i < p.x_nm.size(); ++i)
    d.weight[i] = states[0].psi[i] * states[0].psi[i] * dx_nm;
  return d;
}

Density1d vertical_hh_density(const kp::Material& well,
                              const kp::Material& barrier, double well_nm,
                              double barrier_nm, double dz_nm, bool strained) {
  kp::HeterostructureProfile stack = kp::default_stack(
      well, barrier, well_nm, barrier_nm, 0.3, strained, dz_nm);
  kp::GridProfile grid = kp::discretize(stack);
  auto top = kp::solve_subbands(grid, 0.0, 0.0, 1);

  Density1d d;
  const double center = 0.5 * stack.total_thickness_nm();
  d.coord_nm.resize(grid.n);
  d.weight.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    d.coord_nm[i] = grid.z_nm[i] - center;
    double rho = 0.0;
    for (int c = 0; c < 4; ++c) rho += std::norm(top[0].envelope[4 * i + c]);
    d.weight[i] = rho * dz_nm;
  }
  return d;
}

}  // namespace geqdot::dqd
