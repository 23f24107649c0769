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

#include "vsn/allocation.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "vsn/common.hpp"

namespace vsn {

bool Allocation::is_active(int node) const {
  return std::binary_search(active.begin(), active.end(), node);
}

double Allocation::link_flow_bps(int i, int h) const {
  double s = 0.0;
  for (auto it = flows_bps.lower_bound({i, h, INT_MIN}); it != flows_bps.end();
       ++it) {
    auto [a, b, j] = it->first;
    if (a != i || b != h) break;
    s += it->second;
  }
  return s;
}

Allocation allocation_from_values(const IlpModel& model,
                                  const std::vector<double>& values) {
  Allocation out;
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const IlpVariable& v = model.variables()[idx];
    double val = values[idx];
    switch (v.meta.role) {
      case VarMeta::Role::kAssign:
        if (val > 0.5) out.assignments.push_back({v.meta.i, v.meta.j, v.meta.k});
        break;
      case VarMeta::Role::kActivate:
        if (val > 0.5) out.active.push_back(v.meta.i);
        break;
      case VarMeta::Role::kFlowApp:
        if (val > kFlowEpsBps) out.flows_bps[{v.meta.i, v.meta.h, v.meta.j}] = val;
        break;
      case VarMeta::Role::kRoute:
        if (val > 0.5) out.next_hop[v.meta.i] = v.meta.h;
        break;
      case VarMeta::Role::kNodeSlack:
        out.lambda_j[v.meta.i] = val;
        break;
      case VarMeta::Role::kFlowTotal:
      case VarMeta::Role::kMinSlack:
      case VarMeta::Role::kNone:
        break;
    }
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  std::sort(out.active.begin(), out.active.end());
  return out;
}

double remaining_lifetime_s(const Scenario& scenario, const PriorState& prior,
                            int app) {
  auto it = prior.remaining_lifetime_s.find(app);
  if (it != prior.remaining_lifetime_s.end()) return it->second;
  return scenario.applications.at(app).lifetime_s;
}

Allocation canonicalize(const Scenario& scenario,
                        const std::vector<int>& live_apps,
                        const PriorState& prior, Allocation raw) {
  Allocation out;
  out.assignments = std::move(raw.assignments);
  std::set<int> referenced;
  for (const Assignment& a : out.assignments) referenced.insert(a.node);
  for (const auto& [key, f] : raw.flows_bps) {
    if (f <= kFlowEpsBps) continue;
    auto [i, h, j] = key;
    out.flows_bps[key] = f;
    referenced.insert(i);
    referenced.insert(h);
  }
  out.active.assign(referenced.begin(), referenced.end());
  for (const auto& [i, h] : raw.next_hop) {
    double agg = 0.0;
    for (const auto& [key, f] : out.flows_bps) {
      if (std::get<0>(key) == i && std::get<1>(key) == h) agg += f;
    }
    if (agg > kFlowEpsBps) out.next_hop[i] = h;
  }
  out.lambda_j = recompute_lambda(scenario, live_apps, prior, out);
  for (const auto& [i, lam] : out.lambda_j) {
    if (lam < -1e-6) {
      throw IntegrityError("allocation overdraws node " + std::to_string(i));
    }
  }
  return out;
}

double node_drain_rate_w(const Scenario& scenario, const Allocation& alloc,
                         int node) {
  if (scenario.is_sink(node)) return 0.0;
  double p = 0.0;
  for (const auto& [key, f] : alloc.flows_bps) {
    auto [i, h, j] = key;
    if (i == node) {
      p += tx_energy_j_per_bit(scenario.radio, scenario.node_distance_m(i, h)) * f;
    } else if (h == node) {
      p += scenario.radio.rho_j_per_bit * f;
    }
  }
  for (const Assignment& a : alloc.assignments) {
    if (a.node == node) p += scenario.applications.at(a.app).proc_power_w;
  }
  return p;
}

std::map<int, double> recompute_lambda(const Scenario& scenario,
                                       const std::vector<int>& live_apps,
                                       const PriorState& prior,
                                       const Allocation& alloc) {
  std::map<int, double> lambda;
  std::set<int> live(live_apps.begin(), live_apps.end());
  for (int i : scenario.non_sink_ids()) {
    double spend = 0.0;
    if (alloc.is_active(i) && !prior.active[i]) {
      spend += scenario.activation_cost_j;
    }
    for (const Assignment& a : alloc.assignments) {
      if (a.node != i) continue;
      const Application& app = scenario.applications.at(a.app);
      double dtau = remaining_lifetime_s(scenario, prior, a.app);
      if (!prior.was_assigned(a.node, a.app, a.test_point)) {
        spend += scenario.movement_cost_j;
      }
      spend += app.proc_power_w * dtau;
    }
    for (const auto& [key, f] : alloc.flows_bps) {
      auto [a, b, j] = key;
      if (live.count(j) == 0) {
        throw IntegrityError("flow for application outside the live set");
      }
      double dtau = remaining_lifetime_s(scenario, prior, j);
      if (a == i) {
        spend += tx_energy_j_per_bit(scenario.radio,
                                     scenario.node_distance_m(a, b)) *
                 f * dtau;
      } else if (b == i) {
        spend += scenario.radio.rho_j_per_bit * f * dtau;
      }
    }
    lambda[i] = prior.residual_energy_j[i] - spend;
  }
  return lambda;
}

double allocation_objective(const Scenario& scenario, const Allocation& alloc,
                            ObjectivePolicy policy) {
  (void)scenario;
  if (policy == ObjectivePolicy::kOnlyRestrictions) return 0.0;
  double total = 0.0;
  double lo = 0.0;
  bool first = true;
  for (const auto& [i, lam] : alloc.lambda_j) {
    total += lam;
    if (first || lam < lo) lo = lam;
    first = false;
  }
  switch (policy) {
    case ObjectivePolicy::kTotal:
      return total;
    case ObjectivePolicy::kMaxMin:
      return first ? 0.0 : lo;
    case ObjectivePolicy::kMixed:
      return first ? 0.0 : lo + total / static_cast<double>(alloc.lambda_j.size());
    default:
      return 0.0;
  }
}

}  // namespace vsn
