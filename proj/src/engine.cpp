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

#include "vsn/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "vsn/feasibility_checker.hpp"
#include "vsn/lp_format.hpp"

namespace vsn {

namespace {

// Solver and engine both evaluate the same energy balance; anything beyond
// arithmetic noise means the two disagree on the formulation.
constexpr double kLambdaAgreementJ = 1e-5;
constexpr double kEnergyFloorJ = -1e-6;

}  // namespace

std::vector<int> NetworkState::live_apps() const {
  std::vector<int> out;
  out.reserve(departure_s.size());
  for (auto& [app, t] : departure_s) out.push_back(app);
  return out;
}

PriorState prior_from_state(const Scenario& scenario,
                            const NetworkState& state) {
  PriorState p;
  p.active.assign(scenario.node_count(), 0);
  for (int i : state.allocation.active) {
    p.active.at(i) = 1;
  }
  p.assignments.reserve(state.allocation.assignments.size());
  for (const Assignment& a : state.allocation.assignments) {
    p.assignments.emplace_back(a.node, a.app, a.test_point);
  }
  p.residual_energy_j = state.residual_energy_j;
  for (auto& [app, dep] : state.departure_s) {
    p.remaining_lifetime_s[app] = dep - state.clock_s;
  }
  return p;
}

Engine::Engine(const Scenario& scenario, EngineConfig config)
    : scenario_(scenario), config_(std::move(config)) {
  validate(scenario_);
  state_.residual_energy_j.reserve(scenario_.nodes.size());
  for (const SensorNode& node : scenario_.nodes) {
    state_.residual_energy_j.push_back(node.initial_energy_j);
  }
  metrics_.policy = policy_name(config_.policy);
  metrics_.delta_j = scenario_.movement_cost_j;
  metrics_.phi_j = scenario_.activation_cost_j;
  metrics_.seed = scenario_.generator_seed;
  metrics_.scenario_base_hash = scenario_base_hash(scenario_);
  metrics_.family = ScenarioFamily{
      scenario_.node_count(), static_cast<int>(scenario_.applications.size()),
      scenario_.area_width_m, scenario_.area_height_m};
}

EnergySample Engine::sample_energy() const {
  EnergySample s;
  s.time_s = state_.clock_s;
  s.min_residual_j = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scenario_.node_count(); ++i) {
    if (scenario_.is_sink(i)) continue;
    s.min_residual_j = std::min(s.min_residual_j, state_.residual_energy_j[i]);
    s.total_residual_j += state_.residual_energy_j[i];
  }
  if (!std::isfinite(s.min_residual_j)) s.min_residual_j = 0.0;
  return s;
}

void Engine::drain_energy(double from_s, double to_s) {
  if (to_s < from_s) throw IntegrityError("drain interval runs backwards");
  double dt = to_s - from_s;
  if (dt == 0.0) return;
  for (int i = 0; i < scenario_.node_count(); ++i) {
    if (scenario_.is_sink(i)) continue;
    double rate = node_drain_rate_w(scenario_, state_.allocation, i);
    if (rate == 0.0) continue;
    state_.residual_energy_j[i] -= rate * dt;
    if (state_.residual_energy_j[i] < kEnergyFloorJ) {
      throw IntegrityError("node " + std::to_string(i) +
                           " drained below zero: " +
                           std::to_string(state_.residual_energy_j[i]) + " J");
    }
  }
}

SolveResult Engine::solve(const IlpModel& model) {
  if (config_.external_solver.empty()) {
    return solve_model(model, config_.solver);
  }
  std::string dir = config_.solver_work_dir + "/solve_" +
                    std::to_string(solve_calls_);
  return solve_via_external(model, config_.external_solver, dir);
}

Decision Engine::on_arrival(int app) {
  if (state_.departure_s.count(app) > 0) {
    throw IntegrityError("application " + std::to_string(app) +
                         " arrived twice");
  }
  std::vector<int> live = state_.live_apps();
  live.push_back(app);
  std::sort(live.begin(), live.end());
  PriorState prior = prior_from_state(scenario_, state_);

  Decision decision;
  ++solve_calls_;
  BuildResult built = build_model(scenario_, live, prior, config_.policy);
  if (!built.ok()) {
    // Some test point has no node in range: structurally undeployable.
    ++metrics_.rejected;
    return decision;
  }
  IlpModel model = std::move(*built.model);
  SolveResult res = solve(model);
  decision.solve_status = res.status;
  decision.nodes = res.nodes;
  decision.lp_iterations = res.lp_iterations;
  metrics_.solver_nodes += res.nodes;
  metrics_.solver_lp_iterations += res.lp_iterations;

  if (res.status == SolveStatus::kNodeLimit ||
      res.status == SolveStatus::kTimeLimit) {
    if (config_.fail_on_solver_limit) {
      throw IntegrityError(std::string("solver stopped on its ") +
                           solve_status_name(res.status) +
                           " without a proven optimum");
    }
    ++metrics_.rejected;
    return decision;
  }
  if (res.status == SolveStatus::kInfeasible) {
    ++metrics_.rejected;
    return decision;
  }

  Allocation raw = allocation_from_values(model, res.values);
  std::map<int, double> solver_lambda = raw.lambda_j;
  Allocation canon = canonicalize(scenario_, live, prior, std::move(raw));
  for (auto& [i, lam] : canon.lambda_j) {
    if (!canon.is_active(i)) continue;  // trimmed nodes legitimately differ
    auto it = solver_lambda.find(i);
    double got = it == solver_lambda.end() ? 0.0 : it->second;
    if (std::fabs(got - lam) > kLambdaAgreementJ) {
      throw IntegrityError("solver and engine disagree on residual slack of "
                           "node " +
                           std::to_string(i) + ": " + std::to_string(got) +
                           " vs " + std::to_string(lam) + " J");
    }
  }
  if (config_.certify) {
    CheckReport report = check_allocation(scenario_, live, prior, canon);
    if (!report.ok()) {
      throw IntegrityError("accepted allocation failed certification:\n" +
                           check_report_text(report));
    }
  }
  apply_accept(app, prior, std::move(canon), decision);
  return decision;
}

void Engine::apply_accept(int app, const PriorState& prior, Allocation next,
                          Decision& decision) {
  for (const Assignment& a : next.assignments) {
    if (prior.was_assigned(a.node, a.app, a.test_point)) continue;
    if (!scenario_.is_sink(a.node)) {
      state_.residual_energy_j[a.node] -= scenario_.movement_cost_j;
    }
    if (a.app != app) ++decision.movements;
  }
  for (int i : next.active) {
    if (prior.active[i]) continue;
    ++decision.activations;
    if (!scenario_.is_sink(i)) {
      state_.residual_energy_j[i] -= scenario_.activation_cost_j;
    }
  }
  for (int i = 0; i < scenario_.node_count(); ++i) {
    if (!scenario_.is_sink(i) && state_.residual_energy_j[i] < kEnergyFloorJ) {
      throw IntegrityError("fixed charges overdrew node " + std::to_string(i));
    }
  }
  state_.allocation = std::move(next);
  state_.departure_s[app] =
      state_.clock_s + scenario_.applications[app].lifetime_s;
  decision.accepted = true;
  ++metrics_.deployed;
  metrics_.movements += decision.movements;
  metrics_.activations += decision.activations;
}

void Engine::on_departure(int app) {
  if (state_.departure_s.erase(app) == 0) {
    throw IntegrityError("departure of unknown application " +
                         std::to_string(app));
  }
  Allocation stripped = std::move(state_.allocation);
  std::erase_if(stripped.assignments,
                [app](const Assignment& a) { return a.app == app; });
  for (auto it = stripped.flows_bps.begin(); it != stripped.flows_bps.end();) {
    if (std::get<2>(it->first) == app) {
      it = stripped.flows_bps.erase(it);
    } else {
      ++it;
    }
  }
  // Re-canonicalize against the post-departure state: this trims nodes that
  // lost their last role and refreshes lambda for the remaining bookings.
  PriorState now;
  now.active.assign(scenario_.node_count(), 0);
  for (int i : stripped.active) now.active.at(i) = 1;
  for (const Assignment& a : stripped.assignments) {
    now.assignments.emplace_back(a.node, a.app, a.test_point);
  }
  now.residual_energy_j = state_.residual_energy_j;
  for (auto& [other, dep] : state_.departure_s) {
    now.remaining_lifetime_s[other] = dep - state_.clock_s;
  }
  state_.allocation =
      canonicalize(scenario_, state_.live_apps(), now, std::move(stripped));
}

RunMetrics Engine::run() {
  std::vector<int> arrivals;
  for (int j = 0; j < static_cast<int>(scenario_.applications.size()); ++j) {
    arrivals.push_back(j);
  }
  std::stable_sort(arrivals.begin(), arrivals.end(), [this](int a, int b) {
    return scenario_.applications[a].arrival_s <
           scenario_.applications[b].arrival_s;
  });
  metrics_.arrivals = static_cast<long>(arrivals.size());
  metrics_.energy_trace.push_back(sample_energy());

  std::size_t next = 0;
  while (true) {
    // Next departure, earliest app id first on equal times.
    int dep_app = -1;
    double dep_t = std::numeric_limits<double>::infinity();
    for (auto& [app, t] : state_.departure_s) {
      if (t < dep_t) {
        dep_t = t;
        dep_app = app;
      }
    }
    bool have_arrival = next < arrivals.size();
    double arr_t = have_arrival
                       ? scenario_.applications[arrivals[next]].arrival_s
                       : std::numeric_limits<double>::infinity();
    if (dep_app < 0 && !have_arrival) break;

    TraceRow row;
    // Departures go first at equal timestamps so leaving applications free
    // their resources for the arrival being decided.
    if (dep_app >= 0 && dep_t <= arr_t) {
      drain_energy(state_.clock_s, dep_t);
      state_.clock_s = dep_t;
      on_departure(dep_app);
      row.event = "departure";
      row.app = dep_app;
      row.decision = "-";
    } else {
      int app = arrivals[next++];
      drain_energy(state_.clock_s, arr_t);
      state_.clock_s = arr_t;
      Decision d = on_arrival(app);
      row.event = "arrival";
      row.app = app;
      row.decision = d.accepted ? "accepted" : "rejected";
    }
    EnergySample sample = sample_energy();
    metrics_.energy_trace.push_back(sample);
    row.time_s = state_.clock_s;
    row.deployed = metrics_.deployed;
    row.rejected = metrics_.rejected;
    row.movements = metrics_.movements;
    row.activations = metrics_.activations;
    row.min_residual_j = sample.min_residual_j;
    row.total_residual_j = sample.total_residual_j;
    trace_.push_back(std::move(row));
  }
  return metrics_;
}

std::string trace_to_csv(const std::vector<TraceRow>& rows) {
  std::string out =
      "time_s,event,app,decision,deployed,rejected,movements,activations,"
      "min_residual_j,total_residual_j\n";
  for (const TraceRow& r : rows) {
    out += format_double(r.time_s);
    out += ',';
    out += r.event;
    out += ',';
    out += std::to_string(r.app);
    out += ',';
    out += r.decision;
    out += ',';
    out += std::to_string(r.deployed);
    out += ',';
    out += std::to_string(r.rejected);
    out += ',';
    out += std::to_string(r.movements);
    out += ',';
    out += std::to_string(r.activations);
    out += ',';
    out += format_double(r.min_residual_j);
    out += ',';
    out += format_double(r.total_residual_j);
    out += '\n';
  }
  return out;
}

Json allocation_to_json(const Allocation& alloc) {
  Json j;
  Json ys = Json::array();
  for (const Assignment& a : alloc.assignments) {
    ys.push_back(Json::array({a.node, a.app, a.test_point}));
  }
  j["assignments"] = ys;
  j["active"] = alloc.active;
  Json flows = Json::array();
  for (auto& [key, f] : alloc.flows_bps) {
    auto [i, h, app] = key;
    flows.push_back(Json::array({i, h, app, f}));
  }
  j["flows_bps"] = flows;
  Json hops = Json::array();
  for (auto& [i, h] : alloc.next_hop) hops.push_back(Json::array({i, h}));
  j["next_hop"] = hops;
  Json lams = Json::array();
  for (auto& [i, lam] : alloc.lambda_j) lams.push_back(Json::array({i, lam}));
  j["lambda_j"] = lams;
  return j;
}

Allocation allocation_from_json(const Json& j) {
  Allocation out;
  for (const Json& row : j.at("assignments")) {
    out.assignments.push_back(Assignment{row.at(0).get<int>(),
                                         row.at(1).get<int>(),
                                         row.at(2).get<int>()});
  }
  out.active = j.at("active").get<std::vector<int>>();
  for (const Json& row : j.at("flows_bps")) {
    out.flows_bps[{row.at(0).get<int>(), row.at(1).get<int>(),
                   row.at(2).get<int>()}] = row.at(3).get<double>();
  }
  for (const Json& row : j.at("next_hop")) {
    out.next_hop[row.at(0).get<int>()] = row.at(1).get<int>();
  }
  for (const Json& row : j.at("lambda_j")) {
    out.lambda_j[row.at(0).get<int>()] = row.at(1).get<double>();
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  std::sort(out.active.begin(), out.active.end());
  return out;
}

Json state_to_json(const NetworkState& state) {
  Json j;
  j["clock_s"] = state.clock_s;
  j["residual_energy_j"] = state.residual_energy_j;
  Json live = Json::array();
  for (auto& [app, dep] : state.departure_s) {
    live.push_back(Json::array({app, dep}));
  }
  j["live"] = live;
  j["allocation"] = allocation_to_json(state.allocation);
  return j;
}

Json snapshot_to_json(const AllocationSnapshot& snap) {
  Json j;
  j["live_apps"] = snap.live_apps;
  Json prior;
  prior["active"] = snap.prior.active;
  Json ys = Json::array();
  for (auto& [i, a, k] : snap.prior.assignments) {
    ys.push_back(Json::array({i, a, k}));
  }
  prior["assignments"] = ys;
  prior["residual_energy_j"] = snap.prior.residual_energy_j;
  Json rem = Json::array();
  for (auto& [app, s] : snap.prior.remaining_lifetime_s) {
    rem.push_back(Json::array({app, s}));
  }
  prior["remaining_lifetime_s"] = rem;
  j["prior"] = prior;
  j["allocation"] = allocation_to_json(snap.allocation);
  return j;
}

AllocationSnapshot snapshot_from_json(const Json& j) {
  AllocationSnapshot snap;
  snap.live_apps = j.at("live_apps").get<std::vector<int>>();
  const Json& prior = j.at("prior");
  snap.prior.active = prior.at("active").get<std::vector<std::uint8_t>>();
  for (const Json& row : prior.at("assignments")) {
    snap.prior.assignments.emplace_back(row.at(0).get<int>(),
                                        row.at(1).get<int>(),
                                        row.at(2).get<int>());
  }
  snap.prior.residual_energy_j =
      prior.at("residual_energy_j").get<std::vector<double>>();
  for (const Json& row : prior.at("remaining_lifetime_s")) {
    snap.prior.remaining_lifetime_s[row.at(0).get<int>()] =
        row.at(1).get<double>();
  }
  snap.allocation = allocation_from_json(j.at("allocation"));
  return snap;
}

}  // namespace vsn
