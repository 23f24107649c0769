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

#ifndef VSN_SOLVER_HPP
#define VSN_SOLVER_HPP

#include <map>
#include <string>
#include <vector>

#include "vsn/milp.hpp"

namespace vsn {

enum class SolveStatus { kOptimal, kInfeasible, kNodeLimit, kTimeLimit };
const char* solve_status_name(SolveStatus s);

struct SolverOptions {
  // Deterministic cap on branch-and-bound nodes (LP solves).
  long node_limit = 1000000;
  // Wall-clock cap in seconds; 0 disables. A nonzero cap makes outcomes
  // machine-dependent, so it is off by default.
  double time_limit_s = 0.0;
  double rel_gap = 1e-6;
  double int_tol = 1e-6;
  // Use the OpenMP kernels when compiled in; the serial reference kernels
  // otherwise. Both produce bitwise identical results.
  bool parallel = true;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_solution = false;
  double objective = 0.0;   // maximization value of the incumbent
  double best_bound = 0.0;  // proven upper bound
  std::vector<double> values;  // per model variable, when has_solution
  long nodes = 0;
  long lp_iterations = 0;
  // Wall time of the solve. Reported for diagnostics only; never written to
  // metrics files, which must be machine-independent.
  double wall_time_s = 0.0;

  std::map<std::string, double> named_values(const IlpModel& model) const;
};

// Exact branch-and-bound over the bounded-variable simplex: best-bound node
// order with newest-first tie break, most-fractional branching, warm-started
// dual simplex per node. Deterministic for any thread count as long as no
// wall-clock limit is set.
SolveResult solve_model(const IlpModel& model, const SolverOptions& options = {});

// Root LP relaxation only: no branching, values may be fractional. The
// objective equals the relaxation bound; status is kOptimal or kInfeasible.
SolveResult lp_relax_solve(const IlpModel& model,
                           const SolverOptions& options = {});

}  // namespace vsn

#endif  // VSN_SOLVER_HPP
