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

#ifndef VSN_MILP_HPP
#define VSN_MILP_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "vsn/scenario.hpp"

namespace vsn {

enum class VarKind { kBinary, kContinuous };
enum class Rel { kLe, kEq, kGe };

enum class ObjectivePolicy { kTotal, kMaxMin, kMixed, kOnlyRestrictions };
const char* policy_name(ObjectivePolicy p);
std::optional<ObjectivePolicy> policy_from_name(const std::string& name);

// Semantic identity of a variable: which formulation symbol it realizes and
// for which (node, neighbor, app, test point) indices. Unused indices are -1.
struct VarMeta {
  enum class Role {
    kAssign,     // y(i,j,k)
    kActivate,   // x(i)
    kFlowTotal,  // f(i,h)
    kFlowApp,    // f(i,h,j)
    kRoute,      // b(i,h)
    kNodeSlack,  // lambda(i)
    kMinSlack,   // lambda (max-min auxiliary)
    kNone,       // no formulation meaning (imported from a foreign LP file)
  };
  Role role{Role::kAssign};
  int i{-1};
  int h{-1};
  int j{-1};
  int k{-1};
};

struct IlpVariable {
  std::string name;
  VarKind kind{VarKind::kContinuous};
  double lower{0.0};
  double upper{0.0};
  VarMeta meta;
};

struct LinTerm {
  int var{0};
  double coef{0.0};
};

struct IlpConstraint {
  std::string name;
  std::vector<LinTerm> terms;
  Rel rel{Rel::kLe};
  double rhs{0.0};
};

// Solver-agnostic ILP. Variables are referenced by dense ids in declaration
// order; declaration order is the canonical export order.
class IlpModel {
 public:
  int add_variable(const std::string& name, VarKind kind, double lower,
                   double upper, const VarMeta& meta);
  void add_constraint(const std::string& name, std::vector<LinTerm> terms,
                      Rel rel, double rhs);
  // Maximization objective; empty terms mean "max 0" (pure feasibility).
  void set_objective(std::vector<LinTerm> terms);

  const std::vector<IlpVariable>& variables() const { return variables_; }
  const std::vector<IlpConstraint>& constraints() const { return constraints_; }
  const std::vector<LinTerm>& objective() const { return objective_; }

  int variable_id(const std::string& name) const;  // -1 when unknown
  const IlpVariable& variable(int id) const { return variables_.at(id); }

  // Declared-variable/bounds sanity; throws std::logic_error on violation.
  void check_wellformed() const;

 private:
  std::vector<IlpVariable> variables_;
  std::vector<IlpConstraint> constraints_;
  std::vector<LinTerm> objective_;
  std::map<std::string, int> name_to_id_;
};

// Constants describing the network just before the arrival being solved.
struct PriorState {
  std::vector<std::uint8_t> active;                    // X_i, size |S|
  std::vector<std::tuple<int, int, int>> assignments;  // Y: (i, j, k)
  std::vector<double> residual_energy_j;               // E_i(tau*), size |S|
  std::map<int, double> remaining_lifetime_s;          // per app in A* \ {new}

  bool was_assigned(int i, int j, int k) const;
};

struct StructuralInfeasibility {
  int app{-1};
  int test_point{-1};
};

struct BuildResult {
  std::optional<IlpModel> model;
  std::vector<StructuralInfeasibility> uncoverable;
  bool ok() const { return model.has_value(); }
};

// Builds the arrival-time ILP: coverage (incl. per-node caps), memory/CPU
// budgets, per-application flow conservation, sink balance, activation
// coupling, single-next-hop routing, per-link airtime with interference, and
// the linearized per-node energy balance, under one of the four objectives.
//
// Variables are declared only where they can be nonzero: assignments only for
// covering nodes, flows and route selectors only on viable directed links
// with a non-sink tail.
class ModelBuilder {
 public:
  ModelBuilder(const Scenario& scenario, std::vector<int> live_apps,
               const PriorState& prior);

  BuildResult build(ObjectivePolicy policy);

  // Individual constraint families; build() calls these in order. Exposed
  // for targeted tests.
  void declare_variables(ObjectivePolicy policy);
  void add_coverage_constraints();
  void add_budget_constraints();
  void add_flow_constraints();
  void add_routing_constraints();
  void add_interference_constraints();
  void add_energy_constraints();
  void add_residual_cap_constraints();
  void set_objective(ObjectivePolicy policy);

  IlpModel take_model() { return std::move(model_); }

  // Directed viable links with a non-sink tail, ordered (tail, head).
  const std::vector<std::pair<int, int>>& links() const { return links_; }

  // Conflict set of link (i, h): every declared link whose airtime shares
  // the medium with it, itself included, deduplicated.
  std::vector<int> conflict_links(int link_index) const;

 private:
  int y_id(int i, int j, int k) const;
  double delta_tau(int app) const;

  const Scenario& scenario_;
  std::vector<int> live_apps_;
  const PriorState& prior_;
  IlpModel model_;
  std::vector<std::pair<int, int>> links_;
  std::map<std::pair<int, int>, int> link_index_;
  std::map<std::tuple<int, int, int>, int> y_ids_;
  std::vector<int> x_ids_;
  std::vector<int> flow_total_ids_;  // per link
  std::map<std::tuple<int, int, int>, int> flow_app_ids_;  // (i,h,j)
  std::vector<int> route_ids_;       // per link
  std::map<int, int> lambda_ids_;    // non-sink node -> var
  int lambda_min_id_{-1};
  std::optional<int> new_app_;
};

BuildResult build_model(const Scenario& scenario,
                        const std::vector<int>& live_apps,
                        const PriorState& prior, ObjectivePolicy policy);

}  // namespace vsn

#endif  // VSN_MILP_HPP
