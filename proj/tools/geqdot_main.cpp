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

// Batch driver for the quantum-dot simulation chain.  Selects one
// experiment, resolves its configuration, and writes CSV outputs plus a
// manifest into the output directory.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "geqdot/cli/experiments.hpp"
#include "geqdot/simd/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"geqdot: germanium-hole quantum-dot device simulator"};
  app.set_version_flag("--version", std::string(geqdot::cli::kToolVersion));

  geqdot::cli::RunOptions opts;
  bool list_presets = false;
  bool show_simd = false;

  std::string names;
  for (const std::string& n : geqdot::cli::experiment_names()) {
    if (!names.empty()) names += ", ";
    names += n;
  }

  app.add_option("-e,--experiment", opts.experiment,
                 "Experiment to run (" + names + ")");
  app.add_option("-c,--config", opts.config_path,
                 "INI config file; omitted keys use built-in defaults")
      ->check(CLI::ExistingFile);
  auto* seed_opt =
      app.add_option("-s,--seed", opts.seed, "RNG seed (default 12345)");
  auto* out_opt = app.add_option("-o,--out", opts.out_dir,
                                 "Output directory (default 'out')");
  auto* threads_opt = app.add_option(
      "-t,--threads", opts.threads,
      "Worker thread request, recorded in the manifest (execution is "
      "serial and deterministic)");
  app.add_flag("--list-presets", list_presets,
               "Print the built-in parameter catalog and exit");
  app.add_flag("--simd-report", show_simd,
               "Print the selected vector kernel set and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  if (list_presets) {
    geqdot::cli::print_presets(std::cout);
    return 0;
  }
  if (show_simd) {
    std::cout << geqdot::simd::isa_name(geqdot::simd::active_isa()) << '\n';
    return 0;
  }

  opts.seed_overridden = seed_opt->count() > 0;
  opts.out_overridden = out_opt->count() > 0;
  opts.threads_overridden = threads_opt->count() > 0;
  return geqdot::cli::run_experiment(opts, std::cerr);
}
