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

#include "geqdot/gate/cz.hpp"
#include "geqdot/qtm/noise.hpp"
#include "geqdot/qtm/oscillation.hpp"
#include "geqdot/qtm/trajectory.hpp"
#include "geqdot/rng.hpp"
#include "geqdot/units.hpp"

namespace geqdot::qtm {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};
constexpr uint64_t kRtnStreamTag = 0x52544E;

void check_times(const std::vector<double>& t_ns, double duration) {
  double prev = 0.0;
  for (double t : t_ns) {
    if (t < 0.0 || t > duration + 1e-9)
      throw std::invalid_argument("output time outside the noise window");
    if (t < prev) throw std::invalid_argument("output times must be sorted");
    prev = t;
  }
}

// Exact segment propagator factors for H = h0 + pattern(delta).
struct SegmentEig {
  Matrix6d v;
  gate::Vector6d lam;

  Matrix6cd propagator(double dt_ns) const {
    Vector6cd phases;
    for (int i = 0; i < 6; ++i)
      phases(i) = std::exp(-kI * lam(i) * dt_ns / units::kHbar_ueV_ns);
    return (v * phases.asDiagonal() * v.transpose()).eval();
  }
};

SegmentEig segment_eig(const Matrix6d& h0, double delta_ueV) {
  Eigen::SelfAdjointEigenSolver<Matrix6d> es(
      h0 + gate::noise_pattern_ueV(delta_ueV));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("segment eigensolve failed");
  return {es.eigenvectors(), es.eigenvalues()};
}

}  // namespace

double NoiseTrajectory::value_at(double t_ns) const {
  const auto it =
      std::upper_bound(switch_ns.begin(), switch_ns.end(), t_ns);
  return value_ueV[static_cast<size_t>(it - switch_ns.begin())];
}

NoiseTrajectory sample_rtn(const NoiseModel& model, double duration_ns,
                           uint64_t seed, uint64_t index) {
  model.validate();
  if (!(duration_ns >= 0.0))
    throw std::invalid_argument("duration must be non-negative");

  RngStream rng(seed ^ index, kRtnStreamTag);
  NoiseTrajectory tr;
  tr.duration_ns = duration_ns;
  tr.value_ueV.push_back(rng.normal(0.0, model.a_n_ueV));
  double t = rng.exponential(model.tau_ns);
  while (t < duration_ns) {
    tr.switch_ns.push_back(t);
    tr.value_ueV.push_back(rng.normal(0.0, model.a_n_ueV));
    t += rng.exponential(model.tau_ns);
  }
  return tr;
}

std::vector<Vector6cd> evolve_trajectory(const Vector6cd& psi0,
                                         const Matrix6d& h0_ueV,
                                         const NoiseTrajectory& noise,
                                         const std::vector<double>& t_ns) {
  check_times(t_ns, noise.duration_ns);
  std::vector<Vector6cd> out;
  out.reserve(t_ns.size());

  Vector6cd psi = psi0;
  double t_start = 0.0;
  size_t seg = 0, ti = 0;
  while (ti < t_ns.size()) {
    const double t_end = seg < noise.switch_ns.size()
                             ? noise.switch_ns[seg]
                             : std::numeric_limits<double>::infinity();
    const SegmentEig se = segment_eig(h0_ueV, noise.value_ueV[seg]);
    while (ti < t_ns.size() && t_ns[ti] <= t_end) {
      out.push_back(se.propagator(t_ns[ti] - t_start) * psi);
      ++ti;
    }
    if (ti == t_ns.size()) break;
    psi = se.propagator(t_end - t_start) * psi;
    t_start = t_end;
    ++seg;
  }
  return out;
}

std::vector<Matrix6cd> evolve_propagators(const Matrix6d& h0_ueV,
                                          const NoiseTrajectory& noise,
                                          const std::vector<double>& t_ns) {
  check_times(t_ns, noise.duration_ns);
  std::vector<Matrix6cd> out;
  out.reserve(t_ns.size());

  Matrix6cd u_acc = Matrix6cd::Identity();
  double t_start = 0.0;
  size_t seg = 0, ti = 0;
  while (ti < t_ns.size()) {
    const double t_end = seg < noise.switch_ns.size()
                             ? noise.switch_ns[seg]
                             : std::numeric_limits<double>::infinity();
    const SegmentEig se = segment_eig(h0_ueV, noise.value_ueV[seg]);
    while (ti < t_ns.size() && t_ns[ti] <= t_end) {
      out.push_back(se.propagator(t_ns[ti] - t_start) * u_acc);
      ++ti;
    }
    if (ti == t_ns.size()) break;
    u_acc = se.propagator(t_end - t_start) * u_acc;
    t_start = t_end;
    ++seg;
  }
  return out;
}

double ensemble_fidelity(const Eigen::VectorXcd& ideal,
                         const std::vector<Eigen::VectorXcd>& ensemble,
                         double* std_err) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  double sum = 0.0, sum2 = 0.0;
  for (const auto& psi : ensemble) {
    if (psi.size() != ideal.size())
      throw std::invalid_argument("state dimension mismatch");
    const double f = std::norm(ideal.dot(psi));
    sum += f;
    sum2 += f * f;
  }
  const double n = static_cast<double>(ensemble.size());
  const double mean = sum / n;
  if (std_err) {
    const double var = std::max(0.0, sum2 / n - mean * mean);
    *std_err = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
  }
  return mean;
}

double ensemble_purity(const std::vector<Eigen::VectorXcd>& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  const size_t n = ensemble.size();
  double acc = 0.0;
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k)
      acc += std::norm(ensemble[j].dot(ensemble[k]));
  return acc / (static_cast<double>(n) * n);
}

OscillationResult exchange_oscillation(const gate::GateParams& p,
                                       const NoiseModel& noise,
                                       const OscillationConfig& cfg) {
  if (cfg.n_out < 2 || !(cfg.t_max_ns > 0.0) || cfg.n_traj < 1)
    throw std::invalid_argument("invalid oscillation configuration");
  noise.validate();

  const gate::DressedFrame frame = gate::dress(p);
  const double j = gate::exchange_ueV(p);

  OscillationResult out;
  out.sigma_j_ueV = 2.0 * j / p.t_c_ueV * noise.a_n_ueV;
  out.tau_qs_ns = out.sigma_j_ueV > 0.0
                      ? std::sqrt(2.0) * units::kHbar_ueV_ns / out.sigma_j_ueV
                      : std::numeric_limits<double>::infinity();

  out.t_ns.resize(cfg.n_out);
  for (int i = 0; i < cfg.n_out; ++i)
    out.t_ns[i] = cfg.t_max_ns * i / (cfg.n_out - 1);

  // Initial block of the four dressed computational columns.
  Eigen::Matrix<std::complex<double>, 6, 4> b0;
  for (int s = 0; s < 4; ++s)
    b0.col(s) = frame.evecs.col(frame.comp_col[s]).cast<std::complex<double>>();

  std::vector<complex<double>> acc(cfg.n_out, complex<double>{0.0, 0.0});
  for (int k = 0; k < cfg.n_traj; ++k) {
    const NoiseTrajectory tr =
        sample_rtn(noise, cfg.t_max_ns, cfg.seed, static_cast<uint64_t>(k));
    Eigen::Matrix<std::complex<double>, 6, 4> b = b0;
    double t_start = 0.0;
    size_t seg = 0, ti = 0;
    while (ti < out.t_ns.size()) {
      const double t_end = seg < tr.switch_ns.size()
                               ? tr.switch_ns[seg]
                               : std::numeric_limits<double>::infinity();
      const SegmentEig se = segment_eig(frame.h0_ueV, tr.value_ueV[seg]);
      while (ti < out.t_ns.size() && out.t_ns[ti] <= t_end) {
        const auto bt = (se.propagator(out.t_ns[ti] - t_start) * b).eval();
        complex<double> d[4];
        for (int s = 0; s < 4; ++s)
          d[s] = frame.evecs.col(frame.comp_col[s])
                     .cast<std::complex<double>>()
                     .dot(bt.col(s));
        complex<double> z = d[0] * d[3] * std::conj(d[1]) * std::conj(d[2]);
        const double mag = std::abs(z);
        if (mag > 0.0) z /= mag;
        acc[ti] += z;
        ++ti;
      }
      if (ti == out.t_ns.size()) break;
      b = se.propagator(t_end - t_start) * b;
      t_start = t_end;
      ++seg;
    }
  }

  out.p_up.resize(cfg.n_out);
  out.envelope.resize(cfg.n_out);
  for (int i = 0; i < cfg.n_out; ++i) {
    const complex<double> mean = acc[i] / static_cast<double>(cfg.n_traj);
    out.p_up[i] = 0.5 * (1.0 + mean.real());
    out.envelope[i] = std::abs(mean);
  }

  // Stretched-exponential fit over the band where the envelope is neither
  // flat nor buried in ensemble noise.
  std::vector<double> lnt, lnln, t2, mlne;
  for (int i = 1; i < cfg.n_out; ++i) {
    const double e = out.envelope[i];
    if (e < 0.05 || e > 0.9) continue;
    lnt.push_back(std::log(out.t_ns[i]));
    lnln.push_back(std::log(-std::log(e)));
    t2.push_back(out.t_ns[i] * out.t_ns[i]);
    mlne.push_back(-std::log(e));
  }
  out.envelope_fit.assign(cfg.n_out, 1.0);
  if (lnt.size() >= 5) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const size_t n = lnt.size();
    for (size_t i = 0; i < n; ++i) {
      sx += lnt[i];
      sy += lnln[i];
      sxx += lnt[i] * lnt[i];
      sxy += lnt[i] * lnln[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.gamma_fit = slope;
    // Gaussian-constrained decay time from -ln E = (t / tau)^2.
    double su2 = 0.0, suv = 0.0;
    for (size_t i = 0; i < n; ++i) {
      su2 += t2[i] * t2[i];
      suv += t2[i] * mlne[i];
    }
    out.tau_fit_ns = std::sqrt(su2 / suv);
    out.decayed = true;
    for (int i = 0; i < cfg.n_out; ++i) {
      const double r = out.t_ns[i] / out.tau_fit_ns;
      out.envelope_fit[i] = std::exp(-r * r);
    }
  } else {
    out.tau_fit_ns = std::numeric_limits<double>::quiet_NaN();
    out.gamma_fit = std::numeric_limits<double>::quiet_NaN();
    out.decayed = false;
  }
  return out;
}

}  // namespace geqdot::qtm
