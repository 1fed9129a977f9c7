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
#include <map>
#include <numeric>
#include <stdexcept>

#include "geqdot/gate/cz.hpp"
#include "geqdot/gate/hamiltonian6.hpp"
#include "geqdot/gate/variability.hpp"
#include "geqdot/gate/wkb.hpp"
#include "geqdot/rng.hpp"
#include "geqdot/units.hpp"

namespace geqdot::gate {

Matrix6d build_h0_ueV(const GateParams& p) {
  p.validate();
  const double ez = p.e_z_meV * 1000.0;
  const double dez = p.d_e_z_meV * 1000.0;
  const double u1 = p.u1_meV * 1000.0;
  const double u2 = p.u2_meV * 1000.0;
  const double eps = p.detuning_ueV;
  const double tc = p.t_c_ueV;

  Matrix6d h = Matrix6d::Zero();
  h(0, 0) = 0.5 * ez;
  h(1, 1) = 0.5 * dez;
  h(2, 2) = -0.5 * dez;
  h(3, 3) = -0.5 * ez;
  h(4, 4) = u1 - eps;
  h(5, 5) = u2 + eps;
  h(1, 4) = h(4, 1) = tc;
  h(1, 5) = h(5, 1) = tc;
  h(2, 4) = h(4, 2) = -tc;
  h(2, 5) = h(5, 2) = -tc;
  return h;
}

Matrix6d noise_pattern_ueV(double delta_tc_ueV) {
  Matrix6d h = Matrix6d::Zero();
  h(1, 4) = h(4, 1) = delta_tc_ueV;
  h(1, 5) = h(5, 1) = delta_tc_ueV;
  h(2, 4) = h(4, 2) = -delta_tc_ueV;
  h(2, 5) = h(5, 2) = -delta_tc_ueV;
  return h;
}

double exchange_ueV(const GateParams& p) {
  p.validate();
  const double u1 = p.u1_meV * 1000.0;
  const double u2 = p.u2_meV * 1000.0;
  const double d1 = u1 - p.detuning_ueV;
  const double d2 = u2 + p.detuning_ueV;
  return 2.0 * p.t_c_ueV * p.t_c_ueV * (u1 + u2) / (d1 * d2);
}

Eigen::Matrix4d effective_h_ueV(const GateParams& p) {
  const double j = exchange_ueV(p);
  const double ez = p.e_z_meV * 1000.0;
  const double dez = p.d_e_z_meV * 1000.0;
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h(0, 0) = 0.5 * ez;
  h(1, 1) = 0.5 * dez - 0.5 * j;
  h(2, 2) = -0.5 * dez - 0.5 * j;
  h(1, 2) = h(2, 1) = 0.5 * j;
  h(3, 3) = -0.5 * ez;
  return h;
}

DressedFrame dress(const GateParams& p) {
  DressedFrame f;
  f.h0_ueV = build_h0_ueV(p);
  Eigen::SelfAdjointEigenSolver<Matrix6d> es(f.h0_ueV);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("6-level eigensolve failed");
  f.evals_ueV = es.eigenvalues();
  f.evecs = es.eigenvectors();

  std::array<bool, 6> taken{};
  for (int s = 0; s < 4; ++s) {
    int best = -1;
    double best_ov = 0.0;
    for (int c = 0; c < 6; ++c) {
      const double ov = std::abs(f.evecs(s, c));
      if (!taken[c] && ov > best_ov) {
        best = c;
        best_ov = ov;
      }
    }
    if (best < 0 || best_ov * best_ov < 0.5)
      throw std::runtime_error(
          "dressed basis assignment is ambiguous; the computational states "
          "are not adiabatically connected");
    taken[best] = true;
    if (f.evecs(s, best) < 0.0) f.evecs.col(best) *= -1.0;
    f.comp_col[s] = best;
    f.comp_energy_ueV[s] = f.evals_ueV(best);
  }
  return f;
}

double exact_exchange_ueV(const DressedFrame& f) {
  return -(f.comp_energy_ueV[1] + f.comp_energy_ueV[2]);
}

CzTiming cz_gate_time(const GateParams& p) {
  CzTiming out;
  out.j_ueV = exchange_ueV(p);
  out.t_cz_ns = cz_time_ns(out.j_ueV);

  const DressedFrame f = dress(p);
  const double esum = f.comp_energy_ueV[0] + f.comp_energy_ueV[3] -
                      f.comp_energy_ueV[1] - f.comp_energy_ueV[2];
  out.cond_phase_rad = -esum * out.t_cz_ns / units::kHbar_ueV_ns;
  out.phase_error =
      std::abs(std::abs(out.cond_phase_rad) - units::kPi) / units::kPi;
  return out;
}

WkbModel wkb_ge() { return {12.0, 40.0, 0.5, 0.058}; }
WkbModel wkb_si() { return {2.0, 40.0, 0.5, 0.24}; }

double wkb_barrier_meV(const WkbModel& m, double v_bg_mV) {
  return m.e_b0_meV - m.beta_meV_per_mV * v_bg_mV;
}

double wkb_kappa_invnm(const WkbModel& m, double v_bg_mV) {
  const double eb = wkb_barrier_meV(m, v_bg_mV);
  if (eb <= 2.0)
    throw std::runtime_error("barrier collapsed in the WKB model");
  return std::sqrt(m.mass_over_m0 * eb / units::kC0_meV_nm2);
}

double wkb_tc_ueV(const WkbModel& m, double l_s_nm, double v_bg_mV) {
  return m.t0_meV * 1000.0 *
         std::exp(-wkb_kappa_invnm(m, v_bg_mV) * l_s_nm);
}

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  Line l;
  const double denom = n * sxx - sx * sx;
  l.slope = (n * sxy - sx * sy) / denom;
  l.intercept = (sy - l.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss_res += r * r;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  l.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return l;
}

}  // namespace

WkbFit fit_wkb(const std::vector<dqd::SweepPoint>& sweep,
               double mass_over_m0, double window_lo_ueV,
               double window_hi_ueV) {
  // Monotonicity of the raw sweep: t_c must fall with L_S at fixed V_BG
  // and rise with V_BG at fixed L_S.
  std::map<double, std::map<double, double>> by_v, by_l;
  for (const auto& pt : sweep) {
    if (!pt.valid) continue;
    by_v[pt.v_bg_mV][pt.l_s_nm] = pt.t_c_ueV;
    by_l[pt.l_s_nm][pt.v_bg_mV] = pt.t_c_ueV;
  }
  for (const auto& [v, row] : by_v) {
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& [l, tc] : row) {
      if (tc >= prev)
        throw std::runtime_error(
            "sweep is not monotonically decreasing in L_S");
      prev = tc;
    }
  }
  for (const auto& [l, col] : by_l) {
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [v, tc] : col) {
      if (tc <= prev)
        throw std::runtime_error(
            "sweep is not monotonically increasing in V_BG");
      prev = tc;
    }
  }

  WkbFit fit;
  std::vector<double> vs, ebs, lnt0s;
  for (const auto& [v, row] : by_v) {
    std::vector<double> ls, lny;
    for (const auto& [l, tc] : row) {
      if (tc < window_lo_ueV || tc > window_hi_ueV) continue;
      ls.push_back(l);
      lny.push_back(std::log(tc));
    }
    if (ls.size() < 2) continue;
    const Line line = fit_line(ls, lny);
    fit.n_used += static_cast<int>(ls.size());
    fit.r2_min = vs.empty() ? line.r2 : std::min(fit.r2_min, line.r2);
    vs.push_back(v);
    ebs.push_back(line.slope * line.slope * units::kC0_meV_nm2 /
                  mass_over_m0);
    lnt0s.push_back(line.intercept);
  }
  if (vs.size() < 2)
    throw std::runtime_error(
        "sweep leaves fewer than two voltages with fittable data in the "
        "coupling window");

  const Line eb_line = fit_line(vs, ebs);
  fit.model.mass_over_m0 = mass_over_m0;
  fit.model.e_b0_meV = eb_line.intercept;
  fit.model.beta_meV_per_mV = -eb_line.slope;
  // The 1-D construction's effective prefactor drifts with barrier height,
  // so a single t0 cannot match every voltage.  Anchor it at the highest
  // fitted voltage, the operating regime the model is meant to cover.
  fit.model.t0_meV = std::exp(lnt0s.back()) / 1000.0;

  for (const auto& pt : sweep) {
    if (!pt.valid || pt.t_c_ueV < window_lo_ueV ||
        pt.t_c_ueV > window_hi_ueV)
      continue;
    const double pred =
        std::log(wkb_tc_ueV(fit.model, pt.l_s_nm, pt.v_bg_mV));
    fit.max_log_dev =
        std::max(fit.max_log_dev, std::abs(pred - std::log(pt.t_c_ueV)));
  }
  return fit;
}

double separation_for_gate_time(const WkbModel& m, double v_bg_mV,
                                double u_meV, double t_cz_ns) {
  // Invert T = pi hbar / J with J = 4 t_c^2 / U (symmetric dots, zero
  // detuning) for t_c, then invert the exponential barrier model for L_S.
  const double j_ueV = units::kPi * units::kHbar_ueV_ns / t_cz_ns;
  const double tc_ueV = std::sqrt(j_ueV * u_meV * 1000.0 / 4.0);
  const double kappa = wkb_kappa_invnm(m, v_bg_mV);
  return std::log(m.t0_meV * 1000.0 / tc_ueV) / kappa;
}

double exchange_slope_mV_per_decade(const WkbModel& m, double l_s_nm,
                                    double v_lo_mV, double v_hi_mV) {
  if (!(v_hi_mV > v_lo_mV))
    throw std::invalid_argument("voltage window must be increasing");
  const double tc_lo = wkb_tc_ueV(m, l_s_nm, v_lo_mV);
  const double tc_hi = wkb_tc_ueV(m, l_s_nm, v_hi_mV);
  // J scales as t_c^2 at fixed charging energies.
  const double decades = 2.0 * std::log10(tc_hi / tc_lo);
  return (v_hi_mV - v_lo_mV) / decades;
}

double lntc_sensitivity(const WkbModel& m, double v_bg_mV,
                        double sigma_ls_nm) {
  return wkb_kappa_invnm(m, v_bg_mV) * sigma_ls_nm;
}

VariabilityResult variability_mc(const WkbModel& m, const GateParams& base,
                                 double l_s0_nm, double v_bg_mV,
                                 const VariabilitySpec& spec) {
  if (spec.n_samples < 2)
    throw std::invalid_argument("need at least 2 samples");
  VariabilityResult out;
  out.sensitivity = lntc_sensitivity(m, v_bg_mV, spec.sigma_ls_nm);

  std::vector<double> lntc, t_ns;
  lntc.reserve(spec.n_samples);
  t_ns.reserve(spec.n_samples);
  for (int k = 0; k < spec.n_samples; ++k) {
    RngStream rng(spec.seed ^ static_cast<uint64_t>(k), 0x4C53);
    const double l = l_s0_nm + spec.sigma_ls_nm * rng.normal();
    double tc;
    try {
      tc = wkb_tc_ueV(m, l, v_bg_mV);
    } catch (const std::runtime_error&) {
      ++out.n_collapsed;
      continue;
    }
    GateParams p = base;
    p.t_c_ueV = tc;
    lntc.push_back(std::log(tc));
    t_ns.push_back(cz_time_ns(exchange_ueV(p)));
  }
  if (t_ns.size() < 2)
    throw std::runtime_error("all variability samples collapsed");

  auto sd = [](const std::vector<double>& x) {
    const double mean =
        std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double acc = 0.0;
    for (double v : x) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / (x.size() - 1));
  };
  out.lntc_spread = sd(lntc);

  std::vector<double> sorted = t_ns;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  out.t_median_ns = sorted[sorted.size() / 2];

  std::vector<double> lnt(t_ns.size()), tnorm(t_ns.size());
  for (size_t i = 0; i < t_ns.size(); ++i) {
    lnt[i] = std::log(t_ns[i]);
    tnorm[i] = t_ns[i] / out.t_median_ns;
  }
  out.lnt_spread = sd(lnt);
  out.t_norm_spread = sd(tnorm);

  const auto [mn_it, mx_it] = std::minmax_element(tnorm.begin(), tnorm.end());
  const double lo = *mn_it, hi = *mx_it;
  const int nb = spec.histogram_bins;
  const double width = (hi - lo) / nb;
  out.bin_center.resize(nb);
  out.bin_count.assign(nb, 0);
  for (int b = 0; b < nb; ++b) out.bin_center[b] = lo + (b + 0.5) * width;
  for (double v : tnorm) {
    int b = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
    b = std::clamp(b, 0, nb - 1);
    ++out.bin_count[b];
  }
  return out;
}

}  // namespace geqdot::gate
