// Copyright 2026 The vsnsim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VSN_SWEEP_HPP
#define VSN_SWEEP_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vsn/engine.hpp"
#include "vsn/metrics_report.hpp"
#include "vsn/scenario.hpp"

namespace vsn {

// Cross product policies x delta x phi x seeds. Every point generates its own
// instance from `generator` (with the point's costs substituted), runs the
// full event loop and writes one metrics file into out_dir. Existing files
// are trusted and skipped, so an interrupted sweep resumes where it stopped.
struct SweepConfig {
  GeneratorConfig generator;
  std::vector<ObjectivePolicy> policies;
  std::vector<double> delta_values;
  std::vector<double> phi_values;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  SolverOptions solver;
  std::string external_solver;  // empty selects the builtin solver
  bool fail_on_solver_limit{false};
  int threads{0};  // <= 0 keeps the OpenMP default
  // Progress hook, called once per finished or failed run. May be empty.
  // Called from worker threads, one call at a time.
  std::function<void(const std::string&)> on_event;
};

struct SweepOutcome {
  long completed{0};  // runs executed by this invocation
  long resumed{0};    // runs already on disk
  long failed{0};
  std::vector<std::string> failures;  // "<file>: <reason>"
  std::vector<SummaryRow> summary;
  std::string summary_path;
};

// "run_<policy>_<delta>_<phi>_<seed>.json"
std::string run_file_name(ObjectivePolicy policy, double delta_j, double phi_j,
                          std::uint64_t seed);

// Runs the whole grid (OpenMP-parallel across points), then merges all
// per-run files in deterministic grid order and writes summary.csv. A failed
// point is recorded and skipped; the sweep itself keeps going. Throws
// ConfigError on an empty grid axis or when a resumed file does not match
// the point it names.
SweepOutcome run_sweep(const SweepConfig& config);

}  // namespace vsn

#endif  // VSN_SWEEP_HPP
