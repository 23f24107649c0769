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

#include "vsn/milp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "vsn/common.hpp"

namespace vsn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string idx_name(const char* stem, std::initializer_list<int> idx) {
  std::string s = stem;
  for (int v : idx) {
    s += '_';
    s += std::to_string(v);
  }
  return s;
}
}  // namespace

const char* policy_name(ObjectivePolicy p) {
  switch (p) {
    case ObjectivePolicy::kTotal:
      return "total";
    case ObjectivePolicy::kMaxMin:
      return "maxmin";
    case ObjectivePolicy::kMixed:
      return "mixed";
    case ObjectivePolicy::kOnlyRestrictions:
      return "only-restrictions";
  }
  return "unknown";
}

std::optional<ObjectivePolicy> policy_from_name(const std::string& name) {
  if (name == "total") return ObjectivePolicy::kTotal;
  if (name == "maxmin") return ObjectivePolicy::kMaxMin;
  if (name == "mixed") return ObjectivePolicy::kMixed;
  if (name == "only-restrictions") return ObjectivePolicy::kOnlyRestrictions;
  return std::nullopt;
}

int IlpModel::add_variable(const std::string& name, VarKind kind, double lower,
                           double upper, const VarMeta& meta) {
  if (name_to_id_.count(name) > 0) {
    throw std::logic_error("duplicate variable name: " + name);
  }
  int id = static_cast<int>(variables_.size());
  variables_.push_back(IlpVariable{name, kind, lower, upper, meta});
  name_to_id_[name] = id;
  return id;
}

void IlpModel::add_constraint(const std::string& name,
                              std::vector<LinTerm> terms, Rel rel, double rhs) {
  constraints_.push_back(IlpConstraint{name, std::move(terms), rel, rhs});
}

void IlpModel::set_objective(std::vector<LinTerm> terms) {
  objective_ = std::move(terms);
}

int IlpModel::variable_id(const std::string& name) const {
  auto it = name_to_id_.find(name);
  return it == name_to_id_.end() ? -1 : it->second;
}

void IlpModel::check_wellformed() const {
  int n = static_cast<int>(variables_.size());
  for (const IlpVariable& v : variables_) {
    if (!(v.lower <= v.upper)) {
      throw std::logic_error("inverted bounds on " + v.name);
    }
    if (v.kind == VarKind::kBinary &&
        ((v.lower != 0.0 && v.lower != 1.0) ||
         (v.upper != 0.0 && v.upper != 1.0))) {
      throw std::logic_error("binary variable with non-0/1 bounds: " + v.name);
    }
  }
  auto check_terms = [n](const std::vector<LinTerm>& terms,
                         const std::string& where) {
    std::set<int> seen;
    for (const LinTerm& t : terms) {
      if (t.var < 0 || t.var >= n) {
        throw std::logic_error("term references unknown variable in " + where);
      }
      if (!seen.insert(t.var).second) {
        throw std::logic_error("duplicate variable in " + where);
      }
      if (!std::isfinite(t.coef)) {
        throw std::logic_error("non-finite coefficient in " + where);
      }
    }
  };
  for (const IlpConstraint& c : constraints_) {
    check_terms(c.terms, c.name);
    if (!std::isfinite(c.rhs)) {
      throw std::logic_error("non-finite rhs in " + c.name);
    }
  }
  check_terms(objective_, "objective");
}

bool PriorState::was_assigned(int i, int j, int k) const {
  return std::find(assignments.begin(), assignments.end(),
                   std::make_tuple(i, j, k)) != assignments.end();
}

ModelBuilder::ModelBuilder(const Scenario& scenario, std::vector<int> live_apps,
                           const PriorState& prior)
    : scenario_(scenario), live_apps_(std::move(live_apps)), prior_(prior) {
  std::sort(live_apps_.begin(), live_apps_.end());
  int n = scenario_.node_count();
  if (static_cast<int>(prior_.active.size()) != n ||
      static_cast<int>(prior_.residual_energy_j.size()) != n) {
    throw ConfigError("prior state does not match node count");
  }
  for (int i = 0; i < n; ++i) {
    if (prior_.residual_energy_j[i] < 0.0) {
      throw IntegrityError("negative residual energy on node " +
                           std::to_string(i));
    }
  }
  for (int j : live_apps_) {
    if (j < 0 || j >= static_cast<int>(scenario_.applications.size())) {
      throw ConfigError("unknown application id " + std::to_string(j));
    }
    if (prior_.remaining_lifetime_s.count(j) == 0) {
      if (new_app_.has_value()) {
        throw ConfigError("more than one application without a remaining "
                          "lifetime; exactly one arrival is expected");
      }
      new_app_ = j;
    } else if (prior_.remaining_lifetime_s.at(j) <= 0.0) {
      throw ConfigError("non-positive remaining lifetime for application " +
                        std::to_string(j));
    }
  }

  // Directed viable links; sinks only receive, so they contribute no tails.
  for (int i = 0; i < n; ++i) {
    if (scenario_.is_sink(i)) continue;
    for (int h = 0; h < n; ++h) {
      if (h == i) continue;
      if (link_viable(scenario_, i, h)) {
        link_index_[{i, h}] = static_cast<int>(links_.size());
        links_.emplace_back(i, h);
      }
    }
  }
}

double ModelBuilder::delta_tau(int app) const {
  auto it = prior_.remaining_lifetime_s.find(app);
  if (it != prior_.remaining_lifetime_s.end()) return it->second;
  return scenario_.applications.at(app).lifetime_s;
}

int ModelBuilder::y_id(int i, int j, int k) const {
  auto it = y_ids_.find({i, j, k});
  return it == y_ids_.end() ? -1 : it->second;
}

void ModelBuilder::declare_variables(ObjectivePolicy policy) {
  int n = scenario_.node_count();
  double big_k = scenario_.big_k_bps;

  for (int i = 0; i < n; ++i) {
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      for (int k : app.test_points) {
        std::vector<int> cover = coverage_set(scenario_, j, k);
        if (!std::binary_search(cover.begin(), cover.end(), i)) continue;
        VarMeta meta{VarMeta::Role::kAssign, i, -1, j, k};
        y_ids_[{i, j, k}] = model_.add_variable(
            idx_name("y", {i, j, k}), VarKind::kBinary, 0.0, 1.0, meta);
      }
    }
  }
  x_ids_.resize(n);
  for (int i = 0; i < n; ++i) {
    VarMeta meta{VarMeta::Role::kActivate, i, -1, -1, -1};
    x_ids_[i] =
        model_.add_variable(idx_name("x", {i}), VarKind::kBinary, 0.0, 1.0, meta);
  }
  // Flow bounds beyond K: a link never carries more than its own capacity
  // (its airtime alone fills the schedule), and an application never puts
  // more than its total production on one link. Loops that would exceed the
  // production bound only waste airtime and energy, so no optimum is lost.
  flow_total_ids_.resize(links_.size());
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [i, h] = links_[l];
    double cap = std::min(big_k, scenario_.link_capacity_bps(i, h));
    VarMeta meta{VarMeta::Role::kFlowTotal, i, h, -1, -1};
    flow_total_ids_[l] = model_.add_variable(idx_name("f", {i, h}),
                                             VarKind::kContinuous, 0.0, cap,
                                             meta);
  }
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [i, h] = links_[l];
    double cap = std::min(big_k, scenario_.link_capacity_bps(i, h));
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      double production = static_cast<double>(app.test_points.size()) *
                          app.source_rate_bps;
      VarMeta meta{VarMeta::Role::kFlowApp, i, h, j, -1};
      flow_app_ids_[{i, h, j}] = model_.add_variable(
          idx_name("f", {i, h, j}), VarKind::kContinuous, 0.0,
          std::min(cap, production), meta);
    }
  }
  route_ids_.resize(links_.size());
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [i, h] = links_[l];
    VarMeta meta{VarMeta::Role::kRoute, i, h, -1, -1};
    route_ids_[l] = model_.add_variable(idx_name("b", {i, h}), VarKind::kBinary,
                                        0.0, 1.0, meta);
  }
  for (int i : scenario_.non_sink_ids()) {
    VarMeta meta{VarMeta::Role::kNodeSlack, i, -1, -1, -1};
    lambda_ids_[i] = model_.add_variable(idx_name("lam", {i}),
                                         VarKind::kContinuous, 0.0, kInf, meta);
  }
  if (policy == ObjectivePolicy::kMaxMin || policy == ObjectivePolicy::kMixed) {
    VarMeta meta{VarMeta::Role::kMinSlack, -1, -1, -1, -1};
    lambda_min_id_ =
        model_.add_variable("lam_min", VarKind::kContinuous, 0.0, kInf, meta);
  }
}

void ModelBuilder::add_coverage_constraints() {
  // Every test point of every live application is sensed exactly once.
  for (int j : live_apps_) {
    const Application& app = scenario_.applications[j];
    for (int k : app.test_points) {
      std::vector<LinTerm> terms;
      for (int i : coverage_set(scenario_, j, k)) {
        terms.push_back({y_id(i, j, k), 1.0});
      }
      model_.add_constraint(idx_name("cov", {j, k}), std::move(terms), Rel::kEq,
                            1.0);
    }
  }
  // Per-node cap on test points of the same application. Rows that cannot
  // bind (fewer candidate assignments than the cap) are not emitted.
  for (int i = 0; i < scenario_.node_count(); ++i) {
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      std::vector<LinTerm> terms;
      for (int k : app.test_points) {
        int id = y_id(i, j, k);
        if (id >= 0) terms.push_back({id, 1.0});
      }
      if (static_cast<int>(terms.size()) > scenario_.n_max) {
        model_.add_constraint(idx_name("nmax", {i, j}), std::move(terms),
                              Rel::kLe, static_cast<double>(scenario_.n_max));
      }
    }
  }
}

void ModelBuilder::add_budget_constraints() {
  for (int i = 0; i < scenario_.node_count(); ++i) {
    std::vector<LinTerm> mem;
    std::vector<LinTerm> cpu;
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      for (int k : app.test_points) {
        int id = y_id(i, j, k);
        if (id < 0) continue;
        mem.push_back({id, app.memory_bytes});
        cpu.push_back({id, app.cpu_mips});
      }
    }
    if (mem.empty()) continue;
    const SensorNode& node = scenario_.nodes[i];
    model_.add_constraint(idx_name("mem", {i}), std::move(mem), Rel::kLe,
                          node.memory_bytes);
    model_.add_constraint(idx_name("cpu", {i}), std::move(cpu), Rel::kLe,
                          node.cpu_mips);
  }
}

void ModelBuilder::add_flow_constraints() {
  int n = scenario_.node_count();
  double big_k = scenario_.big_k_bps;

  // Aggregate flow is the sum of per-application flows on the link.
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [i, h] = links_[l];
    std::vector<LinTerm> terms;
    terms.push_back({flow_total_ids_[l], 1.0});
    for (int j : live_apps_) {
      terms.push_back({flow_app_ids_.at({i, h, j}), -1.0});
    }
    model_.add_constraint(idx_name("fagg", {i, h}), std::move(terms), Rel::kEq,
                          0.0);
  }

  // Per-application conservation at non-sinks: inflow plus locally generated
  // data equals outflow.
  for (int j : live_apps_) {
    const Application& app = scenario_.applications[j];
    for (int i : scenario_.non_sink_ids()) {
      std::vector<LinTerm> terms;
      for (auto [a, b] : links_) {
        if (b == i) terms.push_back({flow_app_ids_.at({a, b, j}), 1.0});
      }
      for (auto [a, b] : links_) {
        if (a == i) terms.push_back({flow_app_ids_.at({a, b, j}), -1.0});
      }
      for (int k : app.test_points) {
        int id = y_id(i, j, k);
        if (id >= 0) terms.push_back({id, app.source_rate_bps});
      }
      if (terms.empty()) continue;
      model_.add_constraint(idx_name("cons", {i, j}), std::move(terms),
                            Rel::kEq, 0.0);
    }
  }

  // All generated data reaches the sinks, either by flowing in or by being
  // sensed there directly.
  double produced = 0.0;
  std::vector<LinTerm> sink_terms;
  for (int j : live_apps_) {
    const Application& app = scenario_.applications[j];
    produced +=
        static_cast<double>(app.test_points.size()) * app.source_rate_bps;
  }
  for (int h : scenario_.sink_ids()) {
    for (std::size_t l = 0; l < links_.size(); ++l) {
      if (links_[l].second == h) sink_terms.push_back({flow_total_ids_[l], 1.0});
    }
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      for (int k : app.test_points) {
        int id = y_id(h, j, k);
        if (id >= 0) sink_terms.push_back({id, app.source_rate_bps});
      }
    }
  }
  model_.add_constraint("sinkbal", std::move(sink_terms), Rel::kEq, produced);

  // A node that senses or receives anything must be active. K only needs to
  // dominate the feasible left side, so it is trimmed per node to inbound
  // capacity plus the most data the node could sense, which keeps the
  // relaxation from activating nodes fractionally for free.
  for (int i = 0; i < n; ++i) {
    std::vector<LinTerm> terms;
    double k_node = 0.0;
    for (std::size_t l = 0; l < links_.size(); ++l) {
      if (links_[l].second != i) continue;
      auto [a, b] = links_[l];
      terms.push_back({flow_total_ids_[l], 1.0});
      k_node += std::min(big_k, scenario_.link_capacity_bps(a, b));
    }
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      int covered = 0;
      for (int k : app.test_points) {
        int id = y_id(i, j, k);
        if (id < 0) continue;
        terms.push_back({id, app.source_rate_bps});
        ++covered;
      }
      k_node += static_cast<double>(std::min(covered, scenario_.n_max)) *
                app.source_rate_bps;
    }
    if (terms.empty()) continue;
    terms.push_back({x_ids_[i], -std::min(big_k, k_node)});
    model_.add_constraint(idx_name("act", {i}), std::move(terms), Rel::kLe,
                          0.0);
  }
}

void ModelBuilder::add_routing_constraints() {
  int n = scenario_.node_count();
  double big_k = scenario_.big_k_bps;

  // At most one selected next hop per node. With a single viable out-link
  // the variable bound already enforces this.
  for (int i = 0; i < n; ++i) {
    std::vector<LinTerm> terms;
    for (std::size_t l = 0; l < links_.size(); ++l) {
      if (links_[l].first == i) terms.push_back({route_ids_[l], 1.0});
    }
    if (terms.size() >= 2) {
      model_.add_constraint(idx_name("route", {i}), std::move(terms), Rel::kLe,
                            1.0);
    }
  }
  // Flow only on the selected link. Link capacity is the natural K here: the
  // airtime rows already cap a selected link at its own capacity.
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [i, h] = links_[l];
    double cap = std::min(big_k, scenario_.link_capacity_bps(i, h));
    std::vector<LinTerm> terms{{flow_total_ids_[l], 1.0},
                               {route_ids_[l], -cap}};
    model_.add_constraint(idx_name("gate", {i, h}), std::move(terms), Rel::kLe,
                          0.0);
  }
}

std::vector<int> ModelBuilder::conflict_links(int link_index) const {
  auto [i, h] = links_.at(link_index);
  double ratio = std::pow(scenario_.radio.alpha_w / scenario_.radio.beta_w,
                          1.0 / scenario_.radio.gamma);
  double ri_pmax =
      interference_range_m(scenario_.radio, scenario_.radio.p_max_w);
  bool per_link = scenario_.interference_power ==
                  InterferencePowerMode::kPerLinkMin;
  // Interference radius of the transmitter of link (a, b) under the active
  // power mode: full power, or the minimum power that closes the link.
  auto interf_radius = [&](int a, int b) {
    if (!per_link) return ri_pmax;
    return scenario_.node_distance_m(a, b) * ratio;
  };

  std::set<int> out;
  out.insert(link_index);
  double r_own = interf_radius(i, h);
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [a, b] = links_[l];
    int q = static_cast<int>(l);
    if (a == i || b == i) out.insert(q);
    if ((a == h && b != i) || (b == h && a != i)) out.insert(q);
    if (scenario_.node_distance_m(i, b) <= r_own) out.insert(q);
    if (scenario_.node_distance_m(a, h) <= interf_radius(a, b)) out.insert(q);
  }
  return std::vector<int>(out.begin(), out.end());
}

void ModelBuilder::add_interference_constraints() {
  // Per link, total airtime of the link and everything it conflicts with is
  // at most the full schedule. Each conflicting link is counted once.
  for (std::size_t l = 0; l < links_.size(); ++l) {
    auto [i, h] = links_[l];
    std::vector<LinTerm> terms;
    for (int q : conflict_links(static_cast<int>(l))) {
      auto [a, b] = links_[q];
      terms.push_back(
          {flow_total_ids_[q], 1.0 / scenario_.link_capacity_bps(a, b)});
    }
    model_.add_constraint(idx_name("air", {i, h}), std::move(terms), Rel::kLe,
                          1.0);
  }
}

void ModelBuilder::add_energy_constraints() {
  // Residual-energy balance per non-sink node: activation and movement
  // charges plus radio and processing drain over each application's
  // remaining lifetime, plus the slack, equal the current budget.
  const RadioModel& radio = scenario_.radio;
  for (int i : scenario_.non_sink_ids()) {
    std::vector<LinTerm> terms;
    double act_coef =
        scenario_.activation_cost_j * (prior_.active[i] ? 0.0 : 1.0);
    if (act_coef != 0.0) terms.push_back({x_ids_[i], act_coef});
    for (int j : live_apps_) {
      const Application& app = scenario_.applications[j];
      double dtau = delta_tau(j);
      for (int k : app.test_points) {
        int id = y_id(i, j, k);
        if (id < 0) continue;
        double move_coef =
            scenario_.movement_cost_j * (prior_.was_assigned(i, j, k) ? 0.0 : 1.0);
        terms.push_back({id, move_coef + app.proc_power_w * dtau});
      }
      for (std::size_t l = 0; l < links_.size(); ++l) {
        auto [a, b] = links_[l];
        if (a == i) {
          double e_bit = tx_energy_j_per_bit(radio, scenario_.node_distance_m(a, b));
          terms.push_back({flow_app_ids_.at({a, b, j}), e_bit * dtau});
        } else if (b == i) {
          terms.push_back({flow_app_ids_.at({a, b, j}), radio.rho_j_per_bit * dtau});
        }
      }
    }
    terms.push_back({lambda_ids_.at(i), 1.0});
    model_.add_constraint(idx_name("en", {i}), std::move(terms), Rel::kEq,
                          prior_.residual_energy_j[i]);
  }
}

void ModelBuilder::add_residual_cap_constraints() {
  // Coverage picks exactly one sensor per test point, and that sensor keeps
  // at most its budget minus its activation, movement, and processing
  // charges, so lam_min <= sum_i y_ijk * (E_i - charges_i) holds at every
  // integral point. The relaxation otherwise spreads one processing load
  // across the whole coverage set and reports a minimum residual no integral
  // assignment can reach. A sink pays no energy, so its term is capped by
  // the best budget instead.
  if (lambda_min_id_ < 0) return;
  double cap_free = 0.0;
  for (int i : scenario_.non_sink_ids()) {
    cap_free = std::max(cap_free, prior_.residual_energy_j[i]);
  }
  for (int j : live_apps_) {
    const Application& app = scenario_.applications[j];
    double dtau = delta_tau(j);
    for (int k : app.test_points) {
      std::vector<LinTerm> terms;
      terms.push_back({lambda_min_id_, 1.0});
      for (int i : coverage_set(scenario_, j, k)) {
        double coef = cap_free;
        if (!scenario_.is_sink(i)) {
          double act =
              scenario_.activation_cost_j * (prior_.active[i] ? 0.0 : 1.0);
          double move = scenario_.movement_cost_j *
                        (prior_.was_assigned(i, j, k) ? 0.0 : 1.0);
          coef = prior_.residual_energy_j[i] - act - move -
                 app.proc_power_w * dtau;
        }
        terms.push_back({y_id(i, j, k), -coef});
      }
      model_.add_constraint(idx_name("rescap", {j, k}), std::move(terms),
                            Rel::kLe, 0.0);
    }
  }
  // Sinks sense for free but absorb at most n_max points per application.
  // When they cannot absorb a whole test set, at least one point lands on a
  // sensor that pays the full charge, and lam_min cannot beat the best such
  // budget. Points only sinks can cover consume sink capacity first.
  for (int j : live_apps_) {
    const Application& app = scenario_.applications[j];
    double dtau = delta_tau(j);
    std::map<int, long> sink_points;
    double best = -kInf;
    for (int k : app.test_points) {
      for (int i : coverage_set(scenario_, j, k)) {
        if (scenario_.is_sink(i)) {
          ++sink_points[i];
          continue;
        }
        double act =
            scenario_.activation_cost_j * (prior_.active[i] ? 0.0 : 1.0);
        double move = scenario_.movement_cost_j *
                      (prior_.was_assigned(i, j, k) ? 0.0 : 1.0);
        best = std::max(best, prior_.residual_energy_j[i] - act - move -
                                  app.proc_power_w * dtau);
      }
    }
    long sink_cap = 0;
    for (auto& [s, cnt] : sink_points) {
      sink_cap += std::min<long>(scenario_.n_max, cnt);
    }
    if (sink_cap >= static_cast<long>(app.test_points.size())) continue;
    if (best == -kInf) continue;
    model_.add_constraint(idx_name("resapp", {j}), {{lambda_min_id_, 1.0}},
                          Rel::kLe, best);
  }
}

void ModelBuilder::set_objective(ObjectivePolicy policy) {
  std::vector<LinTerm> obj;
  switch (policy) {
    case ObjectivePolicy::kTotal:
      for (auto& [i, id] : lambda_ids_) obj.push_back({id, 1.0});
      break;
    case ObjectivePolicy::kMaxMin:
    case ObjectivePolicy::kMixed: {
      if (lambda_ids_.empty()) break;  // sink-only network, nothing to balance
      for (auto& [i, id] : lambda_ids_) {
        model_.add_constraint(idx_name("minres", {i}),
                              {{lambda_min_id_, 1.0}, {id, -1.0}}, Rel::kLe,
                              0.0);
      }
      obj.push_back({lambda_min_id_, 1.0});
      if (policy == ObjectivePolicy::kMixed) {
        double w = 1.0 / static_cast<double>(lambda_ids_.size());
        for (auto& [i, id] : lambda_ids_) obj.push_back({id, w});
      }
      break;
    }
    case ObjectivePolicy::kOnlyRestrictions:
      break;
  }
  model_.set_objective(std::move(obj));
}

BuildResult ModelBuilder::build(ObjectivePolicy policy) {
  BuildResult result;
  for (int j : live_apps_) {
    const Application& app = scenario_.applications[j];
    for (int k : app.test_points) {
      if (coverage_set(scenario_, j, k).empty()) {
        result.uncoverable.push_back({j, k});
      }
    }
  }
  if (!result.uncoverable.empty()) return result;

  declare_variables(policy);
  add_coverage_constraints();
  add_budget_constraints();
  add_flow_constraints();
  add_routing_constraints();
  add_interference_constraints();
  add_energy_constraints();
  add_residual_cap_constraints();
  set_objective(policy);
  model_.check_wellformed();
  result.model = std::move(model_);
  return result;
}

BuildResult build_model(const Scenario& scenario,
                        const std::vector<int>& live_apps,
                        const PriorState& prior, ObjectivePolicy policy) {
  ModelBuilder builder(scenario, live_apps, prior);
  return builder.build(policy);
}

}  // namespace vsn
