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
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "geqdot/circuit/ansatz.hpp"
#include "geqdot/circuit/circuit.hpp"
#include "geqdot/circuit/noisy_cz.hpp"
#include "geqdot/circuit/state.hpp"
#include "geqdot/circuit/topology.hpp"
#include "geqdot/qtm/trajectory.hpp"
#include "oracles/closed_form.hpp"

using namespace geqdot;
using std::complex;

namespace {

std::vector<complex<double>> random_amplitudes(int n_qubits,
                                               std::mt19937& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<complex<double>> amp(std::size_t{1} << n_qubits);
  double norm2 = 0.0;
  for (auto& a : amp) {
    a = {normal(rng), normal(rng)};
    norm2 += std::norm(a);
  }
  for (auto& a : amp) a /= std::sqrt(norm2);
  return amp;
}

Eigen::Matrix4cd random_unitary4(std::mt19937& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = {normal(rng), normal(rng)};
  return Eigen::HouseholderQR<Eigen::Matrix4cd>(m).householderQ();
}

double max_dev(const std::vector<complex<double>>& a,
               const std::vector<complex<double>>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("circuit") {

TEST_CASE("dot-array topology: edge list, lookup, and bounds") {
  const auto topo = circuit::QdArrayTopology::grid(2, 3);
  CHECK(topo.n_qubits() == 6);
  const std::vector<std::pair<int, int>> expect{
      {0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
  CHECK(topo.edges == expect);
  CHECK(topo.has_edge(1, 4));
  CHECK(topo.has_edge(4, 1));
  CHECK_FALSE(topo.has_edge(0, 2));
  CHECK(topo.edge_index(4, 1) == 5);
  CHECK(topo.edge_index(0, 2) == -1);
}

TEST_CASE("single-qubit rotations match the dense oracle") {
  std::mt19937 rng(31u);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  for (int nq : {1, 3, 6}) {
    for (int q = 0; q < nq; ++q) {
      const auto amp = random_amplitudes(nq, rng);
      const double th = angle(rng);
      const complex<double> c = std::cos(0.5 * th);
      const complex<double> ms = {0.0, -std::sin(0.5 * th)};

      circuit::StateVector st{nq, amp};
      circuit::apply_rx(st, q, th);
      auto expect = oracles::dense_apply(amp, {q}, {c, ms, ms, c});
      CHECK(max_dev(st.amp, expect) < 1e-14);
      CHECK(std::abs(st.norm() - 1.0) < 1e-13);

      circuit::StateVector st2{nq, amp};
      circuit::apply_rz(st2, q, th);
      expect = oracles::dense_apply(
          amp, {q},
          {std::exp(complex<double>(0.0, -0.5 * th)), 0.0, 0.0,
           std::exp(complex<double>(0.0, 0.5 * th))});
      CHECK(max_dev(st2.amp, expect) < 1e-14);
    }
  }
}

TEST_CASE("two-qubit gates match the dense oracle on random pairs") {
  std::mt19937 rng(77u);
  for (int nq : {2, 4, 6}) {
    for (int trial = 0; trial < 6; ++trial) {
      const int a = static_cast<int>(rng() % nq);
      int b = static_cast<int>(rng() % nq);
      while (b == a) b = static_cast<int>(rng() % nq);
      const auto amp = random_amplitudes(nq, rng);
      const Eigen::Matrix4cd u = random_unitary4(rng);

      circuit::StateVector st{nq, amp};
      circuit::apply_two_qubit(st, a, b, u);

      std::vector<complex<double>> u_flat(16);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u_flat[4 * i + j] = u(i, j);
      const auto expect = oracles::dense_apply(amp, {a, b}, u_flat);
      CHECK(max_dev(st.amp, expect) < 1e-13);
      CHECK(std::abs(st.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("circuit text form round trips exactly") {
  circuit::Circuit c;
  c.n_qubits = 4;
  c.ops.push_back({circuit::Instruction::Kind::kRx, 0, -1, 0.123456789012345});
  c.ops.push_back({circuit::Instruction::Kind::kRz, 3, -1, -2.5});
  c.ops.push_back({circuit::Instruction::Kind::kCz, 1, 2, 0.0});
  c.ops.push_back({circuit::Instruction::Kind::kRx, 2, -1, 1e-17});
  const std::string text = circuit::to_text(c);
  const circuit::Circuit back = circuit::parse_text(text, 4);
  CHECK(back.n_qubits == 4);
  REQUIRE(back.ops.size() == c.ops.size());
  CHECK(circuit::to_text(back) == text);
  CHECK(back.cz_count() == 1);
  for (size_t i = 0; i < c.ops.size(); ++i) {
    CHECK(back.ops[i].kind == c.ops[i].kind);
    CHECK(back.ops[i].q1 == c.ops[i].q1);
    CHECK(back.ops[i].q2 == c.ops[i].q2);
    CHECK(back.ops[i].angle == c.ops[i].angle);
  }

  CHECK_THROWS_AS(circuit::parse_text("RX 0", 2), std::invalid_argument);
  CHECK_THROWS_AS(circuit::parse_text("RX 5 0.5", 2), std::invalid_argument);
  CHECK_THROWS_AS(circuit::parse_text("HOP 0 0.5", 2), std::invalid_argument);
  CHECK_THROWS_AS(circuit::parse_text("CZ 0 abc", 2), std::invalid_argument);
}

TEST_CASE("exchange-based controlled phase: calibration and sampling") {
  gate::GateParams p;
  qtm::NoiseModel noise;
  const circuit::CzGateModel g = circuit::make_cz_gate(p, noise);
  CHECK(g.j_exact_ueV == doctest::Approx(0.29329).epsilon(1e-3));
  CHECK(g.t_cz_ns ==
        doctest::Approx(units::kPi * units::kHbar_ueV_ns / g.j_exact_ueV)
            .epsilon(1e-12));

  const Eigen::Matrix4cd quiet = circuit::noiseless_cz(g);
  CHECK((quiet - circuit::ideal_cz()).cwiseAbs().maxCoeff() < 1e-10);

  double leak = -1.0;
  const Eigen::Matrix4cd u1 = circuit::sample_noisy_cz(g, 11, 3, &leak);
  CHECK(leak >= 0.0);
  CHECK(leak < 1e-3);
  CHECK((u1 - circuit::ideal_cz()).cwiseAbs().maxCoeff() < 0.05);
  const Eigen::Matrix4cd u2 = circuit::sample_noisy_cz(g, 11, 3);
  CHECK((u1 - u2).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::Matrix4cd u3 = circuit::sample_noisy_cz(g, 11, 4);
  CHECK((u1 - u3).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("ansatz construction: angle bookkeeping and gate counts") {
  const auto topo = circuit::QdArrayTopology::grid(2, 3);
  const int n_stages = 3;
  const auto angles = circuit::ansatz_angles(topo, n_stages, 5);
  CHECK(angles.size() == static_cast<size_t>(3 * 6 * (n_stages + 1)));
  for (double a : angles) {
    CHECK(a >= 0.0);
    CHECK(a < 2.0 * units::kPi);
  }
  CHECK(circuit::ansatz_angles(topo, n_stages, 5) == angles);
  CHECK(circuit::ansatz_angles(topo, n_stages, 6) != angles);

  const circuit::Circuit c =
      circuit::build_vqe_ansatz(topo, n_stages, angles);
  CHECK(c.n_qubits == 6);
  CHECK(c.cz_count() == n_stages * static_cast<int>(topo.edges.size()));
  int rx = 0, rz = 0;
  for (const auto& op : c.ops) {
    if (op.kind == circuit::Instruction::Kind::kRx) ++rx;
    if (op.kind == circuit::Instruction::Kind::kRz) ++rz;
  }
  CHECK(rx == 6 * (n_stages + 1));
  CHECK(rz == 2 * 6 * (n_stages + 1));

  const circuit::Circuit bare =
      circuit::build_vqe_ansatz(topo, n_stages, angles, false);
  CHECK(bare.cz_count() == 0);

  CHECK_THROWS_AS(
      circuit::build_vqe_ansatz(topo, n_stages,
                                std::vector<double>(angles.size() - 1)),
      std::invalid_argument);
}

TEST_CASE("noisy execution: zero-amplitude noise reproduces the ideal run") {
  const auto topo = circuit::QdArrayTopology::grid(2, 3);
  gate::GateParams p;
  qtm::NoiseModel quiet;
  quiet.a_n_ueV = 0.0;
  const circuit::CzGateModel g = circuit::make_cz_gate(p, quiet);
  const auto angles = circuit::ansatz_angles(topo, 2, 9);
  const circuit::Circuit c = circuit::build_vqe_ansatz(topo, 2, angles);

  const circuit::StateVector ideal = circuit::run_ideal(c);
  CHECK(std::abs(ideal.norm() - 1.0) < 1e-12);
  const auto ensemble = circuit::run_noisy(c, topo, g, 5, 21);
  REQUIRE(ensemble.size() == 5);
  double se = -1.0;
  const double f = qtm::ensemble_fidelity(ideal.to_eigen(), ensemble, &se);
  CHECK(f > 1.0 - 1e-9);
  CHECK(se < 1e-12);
}

TEST_CASE("noisy execution is deterministic and rejects off-edge gates") {
  const auto topo = circuit::QdArrayTopology::grid(2, 3);
  gate::GateParams p;
  qtm::NoiseModel noise;
  const circuit::CzGateModel g = circuit::make_cz_gate(p, noise);
  const auto angles = circuit::ansatz_angles(topo, 1, 13);
  const circuit::Circuit c = circuit::build_vqe_ansatz(topo, 1, angles);

  const auto a = circuit::run_noisy(c, topo, g, 4, 55);
  const auto b = circuit::run_noisy(c, topo, g, 4, 55);
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k)
    CHECK((a[k] - b[k]).cwiseAbs().maxCoeff() == 0.0);
  const auto other = circuit::run_noisy(c, topo, g, 4, 56);
  CHECK((a[0] - other[0]).cwiseAbs().maxCoeff() > 0.0);

  circuit::Circuit off;
  off.n_qubits = 6;
  off.ops.push_back({circuit::Instruction::Kind::kCz, 0, 2, 0.0});
  CHECK_THROWS_AS(circuit::run_noisy(off, topo, g, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("fidelity versus depth: pinned endpoints and error bars") {
  const auto topo = circuit::QdArrayTopology::grid(2, 3);
  gate::GateParams p;
  qtm::NoiseModel noise;
  const circuit::CzGateModel g = circuit::make_cz_gate(p, noise);
  const auto pts =
      circuit::ansatz_fidelity_vs_depth(topo, g, {1, 6}, 100, 12345);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].n_stages == 1);
  CHECK(pts[1].n_stages == 6);
  for (const auto& pt : pts) {
    CHECK(pt.n_traj == 100);
    CHECK(pt.fidelity > 0.95);
    CHECK(pt.fidelity <= 1.0);
    CHECK(pt.std_err > 0.0);
    CHECK(pt.std_err < 0.003);
  }
  CHECK(pts[0].fidelity == doctest::Approx(0.99907).epsilon(1e-3));
  CHECK(pts[1].fidelity == doctest::Approx(0.99289).epsilon(1e-3));
  CHECK(pts[0].fidelity > pts[1].fidelity);
}

}  // TEST_SUITE
