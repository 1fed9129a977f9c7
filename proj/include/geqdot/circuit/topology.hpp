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

#include <utility>
#include <vector>

namespace geqdot::circuit {

// Rectangular quantum-dot array with nearest-neighbor exchange links.
// Qubit q sits at row q / cols, column q % cols; edges are listed with the
// smaller index first, horizontal links before vertical ones.
struct QdArrayTopology {
  int rows = 0;
  int cols = 0;
  std::vector<std::pair<int, int>> edges;

  int n_qubits() const { return rows * cols; }
  bool has_edge(int a, int b) const;
  // Index into `edges` for the unordered pair (a, b); -1 when absent.
  int edge_index(int a, int b) const;

  static QdArrayTopology grid(int rows = 2, int cols = 3);
};

}  // namespace geqdot::circuit
