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

#ifndef VSN_ENGINE_HPP
#define VSN_ENGINE_HPP

#include <map>
#include <string>
#include <vector>

#include "vsn/allocation.hpp"
#include "vsn/metrics_report.hpp"
#include "vsn/scenario.hpp"
#include "vsn/scenario_io.hpp"
#include "vsn/solver.hpp"

namespace vsn {

struct EngineConfig {
  ObjectivePolicy policy{ObjectivePolicy::kMixed};
  SolverOptions solver;
  // Empty runs the built-in solver; otherwise a command invoked as
  // `<cmd> <lp-file> <solution-file>`.
  std::string external_solver;
  // Exchange directory for the external solver; defaults beside the output.
  std::string solver_work_dir{"."};
  // Re-validate every accepted allocation with the independent feasibility
  // checker. Cheap relative to the solve; on by default.
  bool certify{true};
  // A solver that stops on its node or time limit yields no proven optimum;
  // default treats the arrival as rejected, true aborts the run instead.
  bool fail_on_solver_limit{false};
};

// Mutable simulation state between events. The active set lives inside the
// allocation; lambda_j is kept consistent at every event boundary.
struct NetworkState {
  double clock_s{0.0};
  std::vector<double> residual_energy_j;
  Allocation allocation;
  std::map<int, double> departure_s;  // live app -> departure time

  std::vector<int> live_apps() const;
};

Json state_to_json(const NetworkState& state);

// PriorState describing `state` as of its clock: current activity and
// assignments, no pending arrival.
PriorState prior_from_state(const Scenario& scenario,
                            const NetworkState& state);

struct Decision {
  bool accepted{false};
  SolveStatus solve_status{SolveStatus::kInfeasible};
  int movements{0};
  int activations{0};
  long nodes{0};
  long lp_iterations{0};
};

struct TraceRow {
  double time_s{0.0};
  std::string event;     // arrival | departure
  int app{-1};
  std::string decision;  // accepted | rejected | - (departures)
  long deployed{0};
  long rejected{0};
  long movements{0};
  long activations{0};
  double min_residual_j{0.0};
  double total_residual_j{0.0};
};

std::string trace_to_csv(const std::vector<TraceRow>& rows);

class Engine {
 public:
  Engine(const Scenario& scenario, EngineConfig config);

  // Processes every arrival and departure in time order, draining energy
  // between events. Deterministic for a fixed scenario and config.
  RunMetrics run();

  // Stepwise interface for tests; run() is built from these.
  void drain_energy(double from_s, double to_s);
  Decision on_arrival(int app);
  void on_departure(int app);

  const NetworkState& state() const { return state_; }
  const std::vector<TraceRow>& trace() const { return trace_; }

 private:
  SolveResult solve(const IlpModel& model);
  void apply_accept(int app, const PriorState& prior, Allocation next,
                    Decision& decision);
  EnergySample sample_energy() const;

  const Scenario& scenario_;
  EngineConfig config_;
  NetworkState state_;
  RunMetrics metrics_;
  std::vector<TraceRow> trace_;
  long solve_calls_{0};
};

// Scenario-independent snapshot of one solve instant, the `check`
// subcommand's input.
struct AllocationSnapshot {
  std::vector<int> live_apps;
  PriorState prior;
  Allocation allocation;
};

Json snapshot_to_json(const AllocationSnapshot& snap);
AllocationSnapshot snapshot_from_json(const Json& j);

Json allocation_to_json(const Allocation& alloc);
Allocation allocation_from_json(const Json& j);

}  // namespace vsn

#endif  // VSN_ENGINE_HPP
