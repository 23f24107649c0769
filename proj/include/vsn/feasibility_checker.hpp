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

#ifndef VSN_FEASIBILITY_CHECKER_HPP
#define VSN_FEASIBILITY_CHECKER_HPP

#include <string>
#include <vector>

#include "vsn/allocation.hpp"
#include "vsn/scenario.hpp"
#include "vsn/scenario_io.hpp"

namespace vsn {

struct Violation {
  std::string constraint;  // family plus offending indices
  std::string detail;
  double lhs{0.0};
  double rhs{0.0};
};

struct CheckReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Model-free validation of a concrete allocation against every formulation
// constraint by direct evaluation: coverage, per-node task caps, memory and
// CPU budgets, flow conservation, sink balance, activation coupling, single
// next hop, link viability, shared-medium airtime, and the per-node energy
// balance. Deliberately shares no code with ModelBuilder: conflict sets and
// energy arithmetic are re-derived here so the two implementations check
// each other.
CheckReport check_allocation(const Scenario& scenario,
                             const std::vector<int>& live_apps,
                             const PriorState& prior, const Allocation& alloc,
                             double tol = 1e-6);

std::string check_report_text(const CheckReport& report);
Json check_report_json(const CheckReport& report);

}  // namespace vsn

#endif  // VSN_FEASIBILITY_CHECKER_HPP
