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

#ifndef VSN_ALLOCATION_HPP
#define VSN_ALLOCATION_HPP

#include <map>
#include <tuple>
#include <vector>

#include "vsn/milp.hpp"
#include "vsn/scenario.hpp"

namespace vsn {

// Flows below this rate are treated as zero when deriving which nodes and
// links are in use.
constexpr double kFlowEpsBps = 1e-6;

struct Assignment {
  int node{-1};
  int app{-1};
  int test_point{-1};
  auto operator<=>(const Assignment&) const = default;
};

// Concrete deployment: who senses what, who is active, what flows where.
// Canonical form keeps flows above kFlowEpsBps only, routes only for nodes
// with outgoing traffic, and active exactly the referenced nodes.
struct Allocation {
  std::vector<Assignment> assignments;                  // sorted
  std::vector<int> active;                              // sorted node ids
  std::map<std::tuple<int, int, int>, double> flows_bps;  // (i, h, app)
  std::map<int, int> next_hop;                          // i -> h
  std::map<int, double> lambda_j;                       // non-sink -> joules

  bool is_active(int node) const;
  // Sum over apps of flow on directed link (i, h).
  double link_flow_bps(int i, int h) const;
};

// Raw extraction from solver values: binaries thresholded at 0.5, flows kept
// above kFlowEpsBps, lambda taken from the solution.
Allocation allocation_from_values(const IlpModel& model,
                                  const std::vector<double>& values);

// Trims to the minimal equivalent deployment: active = nodes hosting a task
// or touching a used link, routes only where traffic flows, lambda
// recomputed from the energy balance. Never changes the optimal objective:
// a trimmed node had no task and no traffic, so its removal only zeroes its
// own activation charge.
Allocation canonicalize(const Scenario& scenario,
                        const std::vector<int>& live_apps,
                        const PriorState& prior, Allocation raw);

// Remaining lifetime of `app` as of the solve instant`prior` describes.
double remaining_lifetime_s(const Scenario& scenario, const PriorState& prior,
                            int app);

// Continuous drain rate of `node` under the allocation: transmit + receive
// + processing power. Zero for sinks.
double node_drain_rate_w(const Scenario& scenario, const Allocation& alloc,
                         int node);

// Per-node residual energy at the horizon where every live app has expired,
// the linearized energy balance evaluated on a concrete allocation.
std::map<int, double> recompute_lambda(const Scenario& scenario,
                                       const std::vector<int>& live_apps,
                                       const PriorState& prior,
                                       const Allocation& alloc);

// Objective value a given allocation achieves under a policy.
double allocation_objective(const Scenario& scenario, const Allocation& alloc,
                            ObjectivePolicy policy);

}  // namespace vsn

#endif  // VSN_ALLOCATION_HPP
