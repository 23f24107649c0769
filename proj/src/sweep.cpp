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

#include "vsn/sweep.hpp"

#include <exception>
#include <filesystem>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vsn/common.hpp"

namespace vsn {

namespace {

struct GridPoint {
  ObjectivePolicy policy;
  double delta_j;
  double phi_j;
  std::uint64_t seed;
  std::string file;  // run_file_name, relative to out_dir
};

std::vector<GridPoint> build_grid(const SweepConfig& config) {
  if (config.policies.empty()) throw ConfigError("sweep has no policies");
  if (config.delta_values.empty()) throw ConfigError("sweep has no delta values");
  if (config.phi_values.empty()) throw ConfigError("sweep has no phi values");
  if (config.seeds.empty()) throw ConfigError("sweep has no seeds");
  if (config.out_dir.empty()) throw ConfigError("sweep has no output directory");
  std::vector<GridPoint> grid;
  for (ObjectivePolicy policy : config.policies) {
    for (double delta : config.delta_values) {
      for (double phi : config.phi_values) {
        for (std::uint64_t seed : config.seeds) {
          grid.push_back({policy, delta, phi, seed,
                          run_file_name(policy, delta, phi, seed)});
        }
      }
    }
  }
  return grid;
}

RunMetrics execute_point(const SweepConfig& config, const GridPoint& point,
                         const std::string& work_dir) {
  GeneratorConfig gen = config.generator;
  gen.movement_cost_j = point.delta_j;
  gen.activation_cost_j = point.phi_j;
  Scenario scenario = generate_instance(gen, point.seed);
  EngineConfig ec;
  ec.policy = point.policy;
  ec.solver = config.solver;
  ec.external_solver = config.external_solver;
  ec.solver_work_dir = work_dir;
  ec.fail_on_solver_limit = config.fail_on_solver_limit;
  Engine engine(scenario, ec);
  return engine.run();
}

}  // namespace

std::string run_file_name(ObjectivePolicy policy, double delta_j, double phi_j,
                          std::uint64_t seed) {
  return std::string("run_") + policy_name(policy) + "_" +
         format_double(delta_j) + "_" + format_double(phi_j) + "_" +
         std::to_string(seed) + ".json";
}

SweepOutcome run_sweep(const SweepConfig& config) {
  std::vector<GridPoint> grid = build_grid(config);
  std::filesystem::create_directories(config.out_dir);

  SweepOutcome outcome;
  std::vector<bool> todo(grid.size(), false);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::string path = config.out_dir + "/" + grid[i].file;
    if (std::filesystem::exists(path)) {
      ++outcome.resumed;
    } else {
      todo[i] = true;
    }
  }

#ifdef _OPENMP
  if (config.threads > 0) omp_set_num_threads(config.threads);
#endif

  long completed = 0;
  long failed = 0;
  std::vector<std::string> failures;
  const long n = static_cast<long>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long i = 0; i < n; ++i) {
    if (!todo[static_cast<std::size_t>(i)]) continue;
    const GridPoint& point = grid[static_cast<std::size_t>(i)];
    std::string path = config.out_dir + "/" + point.file;
    std::string note;
    bool ok = false;
    try {
      RunMetrics rm = execute_point(
          config, point, config.out_dir + "/ext_" + std::to_string(i));
      write_run_metrics(path, rm);
      ok = true;
      note = "done " + point.file;
    } catch (const std::exception& e) {
      note = point.file + ": " + e.what();
    }
#ifdef _OPENMP
#pragma omp critical(vsn_sweep_outcome)
#endif
    {
      if (ok) {
        ++completed;
      } else {
        ++failed;
        failures.push_back(note);
      }
      if (config.on_event) config.on_event(ok ? note : "failed " + note);
    }
  }
  outcome.completed = completed;
  outcome.failed = failed;
  // Parallel arrival order is nondeterministic; report failures in grid order.
  for (const GridPoint& point : grid) {
    for (const std::string& f : failures) {
      if (f.rfind(point.file + ":", 0) == 0) outcome.failures.push_back(f);
    }
  }

  // Merge in grid order so the summary never depends on scheduling.
  std::vector<RunMetrics> runs;
  for (const GridPoint& point : grid) {
    std::string path = config.out_dir + "/" + point.file;
    if (!std::filesystem::exists(path)) continue;
    RunMetrics rm = read_run_metrics(path);
    if (rm.policy != policy_name(point.policy) ||
        rm.delta_j != point.delta_j || rm.phi_j != point.phi_j ||
        rm.seed != point.seed) {
      throw ConfigError(path + " does not match the sweep point it names");
    }
    runs.push_back(std::move(rm));
  }
  outcome.summary = aggregate(runs);
  outcome.summary_path = config.out_dir + "/summary.csv";
  write_summary_csv(outcome.summary_path, outcome.summary);
  return outcome;
}

}  // namespace vsn
