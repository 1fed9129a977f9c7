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
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "geqdot/circuit/ansatz.hpp"
#include "geqdot/circuit/circuit.hpp"
#include "geqdot/circuit/noisy_cz.hpp"
#include "geqdot/circuit/state.hpp"
#include "geqdot/circuit/topology.hpp"
#include "geqdot/qtm/trajectory.hpp"
#include "geqdot/rng.hpp"
#include "geqdot/simd/kernels.hpp"
#include "geqdot/units.hpp"

namespace geqdot::circuit {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};
constexpr uint64_t kAngleStreamTag = 0x414E47;
constexpr uint64_t kTrajStride = 1ull << 20;

}  // namespace

bool QdArrayTopology::has_edge(int a, int b) const {
  return edge_index(a, b) >= 0;
}

int QdArrayTopology::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].first == a && edges[i].second == b)
      return static_cast<int>(i);
  return -1;
}

QdArrayTopology QdArrayTopology::grid(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("grid dimensions must be positive");
  QdArrayTopology t;
  t.rows = rows;
  t.cols = cols;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c)
      t.edges.emplace_back(r * cols + c, r * cols + c + 1);
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c)
      t.edges.emplace_back(r * cols + c, (r + 1) * cols + c);
  return t;
}

int Circuit::cz_count() const {
  int n = 0;
  for (const auto& op : ops)
    if (op.kind == Instruction::Kind::kCz) ++n;
  return n;
}

std::string to_text(const Circuit& c) {
  std::string out;
  char buf[64];
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case Instruction::Kind::kRx:
        std::snprintf(buf, sizeof buf, "RX %d %.17g\n", op.q1, op.angle);
        break;
      case Instruction::Kind::kRz:
        std::snprintf(buf, sizeof buf, "RZ %d %.17g\n", op.q1, op.angle);
        break;
      case Instruction::Kind::kCz:
        std::snprintf(buf, sizeof buf, "CZ %d %d\n", op.q1, op.q2);
        break;
    }
    out += buf;
  }
  return out;
}

Circuit parse_text(const std::string& text, int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
  Circuit c;
  c.n_qubits = n_qubits;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto check_q = [&](int q) {
    if (q < 0 || q >= n_qubits)
      throw std::invalid_argument("qubit index out of range on line " +
                                  std::to_string(line_no));
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;  // blank line
    Instruction ins;
    if (op == "RX" || op == "RZ") {
      ins.kind = op == "RX" ? Instruction::Kind::kRx : Instruction::Kind::kRz;
      if (!(ls >> ins.q1 >> ins.angle))
        throw std::invalid_argument("malformed rotation on line " +
                                    std::to_string(line_no));
      check_q(ins.q1);
    } else if (op == "CZ") {
      ins.kind = Instruction::Kind::kCz;
      if (!(ls >> ins.q1 >> ins.q2))
        throw std::invalid_argument("malformed CZ on line " +
                                    std::to_string(line_no));
      check_q(ins.q1);
      check_q(ins.q2);
      if (ins.q1 == ins.q2)
        throw std::invalid_argument("CZ qubits must differ on line " +
                                    std::to_string(line_no));
    } else {
      throw std::invalid_argument("unknown instruction '" + op +
                                  "' on line " + std::to_string(line_no));
    }
    std::string rest;
    if (ls >> rest)
      throw std::invalid_argument("trailing tokens on line " +
                                  std::to_string(line_no));
    c.ops.push_back(ins);
  }
  return c;
}

StateVector StateVector::zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24)
    throw std::invalid_argument("qubit count out of supported range");
  StateVector st;
  st.n_qubits = n_qubits;
  st.amp.assign(size_t{1} << n_qubits, {0.0, 0.0});
  st.amp[0] = {1.0, 0.0};
  return st;
}

double StateVector::norm() const {
  return std::sqrt(simd::norm2(amp.data(), amp.size()));
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::runtime_error("cannot normalize a null state");
  for (auto& a : amp) a /= n;
}

Eigen::VectorXcd StateVector::to_eigen() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amp.size()));
  for (size_t i = 0; i < amp.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = amp[i];
  return v;
}

namespace {

void check_qubit(const StateVector& st, int q) {
  if (q < 0 || q >= st.n_qubits)
    throw std::invalid_argument("qubit index out of range");
}

}  // namespace

void apply_rx(StateVector& st, int q, double theta) {
  check_qubit(st, q);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const complex<double> u[4] = {c, -kI * s, -kI * s, c};
  simd::apply_1q(st.amp.data(), st.amp.size(), q, u);
}

void apply_rz(StateVector& st, int q, double theta) {
  check_qubit(st, q);
  const complex<double> u[4] = {std::exp(-kI * (0.5 * theta)), 0.0, 0.0,
                                std::exp(kI * (0.5 * theta))};
  simd::apply_1q(st.amp.data(), st.amp.size(), q, u);
}

void apply_two_qubit(StateVector& st, int a, int b,
                     const Eigen::Matrix4cd& u) {
  check_qubit(st, a);
  check_qubit(st, b);
  if (a == b) throw std::invalid_argument("two-qubit gate needs two qubits");

  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  // Kernel basis index is v = b_hi * 2 + b_lo; remap the logical
  // (s_a, s_b) indexing accordingly.
  int perm[4];
  for (int v = 0; v < 4; ++v) {
    const int b_hi = v >> 1;
    const int b_lo = v & 1;
    const int s_a = (a == hi) ? b_hi : b_lo;
    const int s_b = (b == hi) ? b_hi : b_lo;
    perm[v] = s_a * 2 + s_b;
  }
  complex<double> k[16];
  for (int v = 0; v < 4; ++v)
    for (int w = 0; w < 4; ++w) k[v * 4 + w] = u(perm[v], perm[w]);
  simd::apply_2q(st.amp.data(), st.amp.size(), lo, hi, k);
}

CzGateModel make_cz_gate(const gate::GateParams& p,
                         const qtm::NoiseModel& noise) {
  noise.validate();
  CzGateModel g;
  g.params = p;
  g.noise = noise;
  g.frame = gate::dress(p);
  g.j_exact_ueV = gate::exact_exchange_ueV(g.frame);
  if (!(g.j_exact_ueV > 0.0))
    throw std::runtime_error("exact exchange is not positive");
  g.t_cz_ns = gate::cz_time_ns(g.j_exact_ueV);

  // Calibration: the noiseless projected gate is diag(exp(-i E_s T/hbar));
  // the frame phases rotate it to diag(1, 1, 1, -1).  The duration choice
  // makes the conditional part of these phases exactly pi, so they are
  // realizable as single-qubit Z rotations plus a global phase.
  for (int s = 0; s < 4; ++s)
    g.frame_phase[s] = (s == 3 ? units::kPi : 0.0) +
                       g.frame.comp_energy_ueV[s] * g.t_cz_ns /
                           units::kHbar_ueV_ns;
  const double cond = g.frame_phase[0] - g.frame_phase[1] -
                      g.frame_phase[2] + g.frame_phase[3];
  if (std::abs(std::remainder(cond, 2.0 * units::kPi)) > 1e-9)
    throw std::runtime_error("frame phases lost the Z-product form");
  return g;
}

Eigen::Matrix4cd ideal_cz() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(3, 3) = -1.0;
  return u;
}

namespace {

Eigen::Matrix4cd project_and_calibrate(const CzGateModel& g,
                                       const qtm::NoiseTrajectory& traj,
                                       double* leakage_out) {
  const gate::Matrix6cd u6 =
      qtm::evolve_propagators(g.frame.h0_ueV, traj, {g.t_cz_ns})[0];

  Eigen::Matrix<double, 6, 4> proj;
  for (int s = 0; s < 4; ++s)
    proj.col(s) = g.frame.evecs.col(g.frame.comp_col[s]);
  Eigen::Matrix4cd m =
      proj.transpose().cast<complex<double>>() * u6 *
      proj.cast<complex<double>>();

  double leak = 0.0;
  for (int s = 0; s < 4; ++s)
    leak = std::max(leak, 1.0 - m.col(s).squaredNorm());
  if (leakage_out) *leakage_out = leak;
  if (leak > g.max_leakage)
    throw std::runtime_error(
        "leakage out of the computational subspace exceeds the budget");

  for (int s = 0; s < 4; ++s) m.col(s) /= m.col(s).norm();
  for (int s = 0; s < 4; ++s) m.row(s) *= std::exp(kI * g.frame_phase[s]);
  return m;
}

}  // namespace

Eigen::Matrix4cd sample_noisy_cz(const CzGateModel& g, uint64_t seed,
                                 uint64_t index, double* leakage_out) {
  const qtm::NoiseTrajectory traj =
      qtm::sample_rtn(g.noise, g.t_cz_ns, seed, index);
  return project_and_calibrate(g, traj, leakage_out);
}

Eigen::Matrix4cd noiseless_cz(const CzGateModel& g) {
  qtm::NoiseTrajectory traj;
  traj.duration_ns = g.t_cz_ns;
  traj.value_ueV = {0.0};
  return project_and_calibrate(g, traj, nullptr);
}

Circuit build_vqe_ansatz(const QdArrayTopology& topo, int n_stages,
                         const std::vector<double>& angles,
                         bool with_entanglers) {
  if (n_stages < 0) throw std::invalid_argument("negative stage count");
  const int nq = topo.n_qubits();
  const size_t need = static_cast<size_t>(3) * nq * (n_stages + 1);
  if (angles.size() != need)
    throw std::invalid_argument("ansatz needs " + std::to_string(need) +
                                " angles, got " +
                                std::to_string(angles.size()));

  Circuit c;
  c.n_qubits = nq;
  size_t idx = 0;
  auto rotation_layer = [&] {
    for (int q = 0; q < nq; ++q) {
      c.ops.push_back({Instruction::Kind::kRz, q, -1, angles[idx++]});
      c.ops.push_back({Instruction::Kind::kRx, q, -1, angles[idx++]});
      c.ops.push_back({Instruction::Kind::kRz, q, -1, angles[idx++]});
    }
  };
  rotation_layer();
  for (int s = 0; s < n_stages; ++s) {
    if (with_entanglers)
      for (const auto& [a, b] : topo.edges)
        c.ops.push_back({Instruction::Kind::kCz, a, b, 0.0});
    rotation_layer();
  }
  return c;
}

std::vector<double> ansatz_angles(const QdArrayTopology& topo, int n_stages,
                                  uint64_t seed) {
  const size_t need =
      static_cast<size_t>(3) * topo.n_qubits() * (n_stages + 1);
  RngStream rng(seed, kAngleStreamTag);
  std::vector<double> a(need);
  for (double& v : a)
    v = std::fmod(2.0 * units::kPi * rng.uniform(), 2.0 * units::kPi);
  return a;
}

StateVector run_ideal(const Circuit& c) {
  StateVector st = StateVector::zero_state(c.n_qubits);
  const Eigen::Matrix4cd cz = ideal_cz();
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case Instruction::Kind::kRx:
        apply_rx(st, op.q1, op.angle);
        break;
      case Instruction::Kind::kRz:
        apply_rz(st, op.q1, op.angle);
        break;
      case Instruction::Kind::kCz:
        apply_two_qubit(st, op.q1, op.q2, cz);
        break;
    }
  }
  return st;
}

std::vector<Eigen::VectorXcd> run_noisy(const Circuit& c,
                                        const QdArrayTopology& topo,
                                        const CzGateModel& g, int n_traj,
                                        uint64_t seed) {
  if (n_traj < 1) throw std::invalid_argument("need at least one trajectory");
  for (const auto& op : c.ops)
    if (op.kind == Instruction::Kind::kCz && !topo.has_edge(op.q1, op.q2))
      throw std::invalid_argument(
          "CZ on (" + std::to_string(op.q1) + ", " + std::to_string(op.q2) +
          ") does not match a topology edge");

  std::vector<Eigen::VectorXcd> out;
  out.reserve(n_traj);
  for (int k = 0; k < n_traj; ++k) {
    StateVector st = StateVector::zero_state(c.n_qubits);
    uint64_t gate_no = 0;
    for (const auto& op : c.ops) {
      switch (op.kind) {
        case Instruction::Kind::kRx:
          apply_rx(st, op.q1, op.angle);
          break;
        case Instruction::Kind::kRz:
          apply_rz(st, op.q1, op.angle);
          break;
        case Instruction::Kind::kCz: {
          // Orient the physical gate along the stored edge order so that
          // both CZ a b and CZ b a address the same device.
          const auto& e = topo.edges[topo.edge_index(op.q1, op.q2)];
          const Eigen::Matrix4cd m = sample_noisy_cz(
              g, seed, static_cast<uint64_t>(k) * kTrajStride + gate_no);
          apply_two_qubit(st, e.first, e.second, m);
          st.normalize();
          ++gate_no;
          break;
        }
      }
    }
    out.push_back(st.to_eigen());
  }
  return out;
}

std::vector<FidelityPoint> ansatz_fidelity_vs_depth(
    const QdArrayTopology& topo, const CzGateModel& g,
    const std::vector<int>& stage_counts, int n_traj, uint64_t seed) {
  std::vector<FidelityPoint> out;
  out.reserve(stage_counts.size());
  for (int n_stages : stage_counts) {
    const Circuit c = build_vqe_ansatz(
        topo, n_stages, ansatz_angles(topo, n_stages, seed));
    const Eigen::VectorXcd ideal = run_ideal(c).to_eigen();
    const auto ensemble = run_noisy(c, topo, g, n_traj, seed);
    FidelityPoint pt;
    pt.n_stages = n_stages;
    pt.n_traj = n_traj;
    pt.fidelity = qtm::ensemble_fidelity(ideal, ensemble, &pt.std_err);
    out.push_back(pt);
  }
  return out;
}

}  // namespace geqdot::circuit
