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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace geqdot::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
  std::string experiment;
  std::string config_path;   // empty: built-in defaults
  std::string out_dir = "out";
  uint64_t seed = 12345;
  bool seed_overridden = false;
  bool out_overridden = false;
  int threads = 1;
  bool threads_overridden = false;
};

std::vector<std::string> experiment_names();

// Runs one experiment end to end: resolve configuration, compute, write
// CSV outputs and manifest.json under out_dir.  Returns a process exit
// code: 0 success, 1 compute failure, 2 configuration error.
int run_experiment(const RunOptions& opts, std::ostream& err);

// Default parameter catalog: every built-in constant with value and unit.
void print_presets(std::ostream& out);

// The same catalog as a parseable config; parsing it back and resolving
// yields exactly the built-in defaults (round-trip property).
std::string preset_config_text();

}  // namespace geqdot::cli
