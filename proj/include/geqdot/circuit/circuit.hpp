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

#pragma once

#include <string>
#include <vector>

namespace geqdot::circuit {

struct Instruction {
  enum class Kind { kRx, kRz, kCz };
  Kind kind = Kind::kRx;
  int q1 = 0;
  int q2 = -1;        // second qubit, CZ only
  double angle = 0.0; // rotation angle in rad, RX/RZ only
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Instruction> ops;

  int cz_count() const;
};

// One instruction per line: "RX q theta", "RZ q theta", "CZ q1 q2".
// Angles use full double precision so that to_text / parse_text round
// trips exactly.
std::string to_text(const Circuit& c);
Circuit parse_text(const std::string& text, int n_qubits);

}  // namespace geqdot::circuit
