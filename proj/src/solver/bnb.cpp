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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

#include "solver/simplex.hpp"
#include "vsn/common.hpp"
#include "vsn/solver.hpp"

namespace vsn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoundFix {
  int var;
  double lower;
  double upper;
};

// An unsolved child: parent bound and basis, fixes include the branch fix.
struct Node {
  double bound;  // parent LP relaxation value in max space
  long seq;      // creation order; newer pops first on equal bounds
  std::vector<BoundFix> fixes;
  SimplexEngine::BasisSnapshot basis;
};

// A solved relaxation that needs branching. Carries the basis factors so the
// dive into the preferred child skips refactorization.
struct Branch {
  double zmax;
  int var;
  double val;
  int preferred;  // child value to dive into first
  std::vector<BoundFix> fixes;
  SimplexEngine::BasisSnapshot basis;
  SimplexEngine::FactorCache factors;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.seq < b.seq;
  }
};

// A fractional binary at a solved node. Probed candidates carry measured
// child bound decays; the rest are scored from learned pseudocosts.
struct Cand {
  int var;
  double val;
  double down_gain;
  double up_gain;
  bool probed;
};

LpCore core_from_model(const IlpModel& model) {
  LpCore core;
  core.m = static_cast<int>(model.constraints().size());
  core.n_struct = static_cast<int>(model.variables().size());
  core.col_rows.resize(core.n_struct + core.m);
  core.col_vals.resize(core.n_struct + core.m);
  core.lower.resize(core.n_struct + core.m);
  core.upper.resize(core.n_struct + core.m);
  core.obj.assign(core.n_struct + core.m, 0.0);
  core.rhs.resize(core.m);

  for (int j = 0; j < core.n_struct; ++j) {
    const IlpVariable& v = model.variables()[j];
    core.lower[j] = v.lower;
    core.upper[j] = v.upper;
  }
  for (const LinTerm& t : model.objective()) core.obj[t.var] = -t.coef;

  for (int r = 0; r < core.m; ++r) {
    const IlpConstraint& c = model.constraints()[r];
    core.rhs[r] = c.rhs;
    for (const LinTerm& t : c.terms) {
      core.col_rows[t.var].push_back(r);
      core.col_vals[t.var].push_back(t.coef);
    }
    int slack = core.n_struct + r;
    core.col_rows[slack].push_back(r);
    core.col_vals[slack].push_back(1.0);
    switch (c.rel) {
      case Rel::kLe:
        core.lower[slack] = 0.0;
        core.upper[slack] = kInf;
        break;
      case Rel::kEq:
        core.lower[slack] = 0.0;
        core.upper[slack] = 0.0;
        break;
      case Rel::kGe:
        core.lower[slack] = -kInf;
        core.upper[slack] = 0.0;
        break;
    }
  }
  return core;
}

class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& model, const SolverOptions& opts)
      : model_(model),
        opts_(opts),
        engine_(core_from_model(model),
                opts.parallel && kernels::parallel_available()
                    ? kernels::Mode::kParallel
                    : kernels::Mode::kSerial) {
    for (int j = 0; j < static_cast<int>(model.variables().size()); ++j) {
      root_lower_.push_back(model.variables()[j].lower);
      root_upper_.push_back(model.variables()[j].upper);
      if (model.variables()[j].kind == VarKind::kBinary) binaries_.push_back(j);
    }
    std::size_t n = model.variables().size();
    for (int s = 0; s < 2; ++s) {
      pc_sum_[s].assign(n, 0.0);
      pc_cnt_[s].assign(n, 0);
    }
  }

  SolveResult run() {
    t0_ = std::chrono::steady_clock::now();
    incumbent_obj_ = -kInf;
    stop_.reset();
    result_ = SolveResult{};

    LpStatus st = engine_.solve_fresh();
    ++nodes_;
    if (st == LpStatus::kInfeasible) return finish(SolveStatus::kInfeasible);
    if (st != LpStatus::kOptimal) {
      throw IntegrityError("relaxation did not converge");
    }
    plunge({});

    while (!stop_ && !open_.empty()) {
      Node node = open_.top();
      // Remaining nodes cannot beat the incumbent: proven optimal.
      if (node.bound <= prune_threshold()) break;
      open_.pop();
      apply_bounds(node.fixes);
      engine_.restore(node.basis);
      if (relax_current()) plunge(std::move(node.fixes));
    }
    if (stop_) return finish(*stop_);
    return finish(incumbent_obj_ > -kInf ? SolveStatus::kOptimal
                                         : SolveStatus::kInfeasible);
  }

 private:
  double prune_threshold() const {
    if (incumbent_obj_ == -kInf) return -kInf;
    return incumbent_obj_ + 1e-9 + opts_.rel_gap * std::fabs(incumbent_obj_);
  }

  void apply_bounds(const std::vector<BoundFix>& fixes) {
    for (std::size_t j = 0; j < root_lower_.size(); ++j) {
      engine_.set_bounds(static_cast<int>(j), root_lower_[j], root_upper_[j]);
    }
    for (const BoundFix& f : fixes) engine_.set_bounds(f.var, f.lower, f.upper);
  }

  // Solves the relaxation for the bounds currently installed in the engine.
  // Returns true when an optimum is available; false fathoms (infeasible).
  bool relax_current() {
    LpStatus st = engine_.reoptimize();
    ++nodes_;
    if (std::getenv("VSN_BNB_LOG") && nodes_ % 500 == 0) {  // TEMP
      std::fprintf(stderr, "bnb nodes=%ld open=%zu inc=%.6f top=%.6f iters=%ld\n",
                   nodes_, open_.size(), incumbent_obj_,
                   open_.empty() ? -1.0 : open_.top().bound,
                   engine_.iterations());
    }
    if (st != LpStatus::kOptimal && st != LpStatus::kInfeasible) {
      // A child of a bounded root cannot be unbounded: branching only
      // tightens bounds. Treat the verdict as warm-start damage and let a
      // cold start give the authoritative answer.
      st = engine_.solve_fresh();
    }
    if (st == LpStatus::kInfeasible) return false;
    if (st != LpStatus::kOptimal) {
      throw IntegrityError("node relaxation did not converge");
    }
    return true;
  }

  bool hit_limit() {
    if (nodes_ >= opts_.node_limit) {
      stop_ = SolveStatus::kNodeLimit;
      return true;
    }
    if (opts_.time_limit_s > 0.0) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0_;
      if (dt.count() > opts_.time_limit_s) {
        stop_ = SolveStatus::kTimeLimit;
        return true;
      }
    }
    return false;
  }

  // Engine holds an optimal relaxation for `fixes`. Dives along the child
  // nearer the relaxation value until the chain fathoms, queueing the other
  // child at every level; incumbents surface early and best-bound search
  // picks up the queued siblings afterwards.
  void plunge(std::vector<BoundFix> fixes) {
    for (;;) {
      std::optional<Branch> br = handle_solved_node(std::move(fixes));
      if (!br) return;
      if (hit_limit()) {
        // Preserve the subtree bound for the final gap report.
        open_.push(Node{br->zmax, seq_++, std::move(br->fixes),
                        std::move(br->basis)});
        return;
      }
      double preferred = static_cast<double>(br->preferred);
      std::vector<BoundFix> other = br->fixes;
      other.push_back({br->var, 1.0 - preferred, 1.0 - preferred});
      open_.push(Node{br->zmax, seq_++, std::move(other), br->basis});
      fixes = std::move(br->fixes);
      fixes.push_back({br->var, preferred, preferred});
      apply_bounds(fixes);
      engine_.restore_with_factors(br->basis, br->factors);
      if (!relax_current()) return;
    }
  }

  // Engine holds an optimal relaxation for `fixes`: fathom by bound or by
  // integrality, or hand back the branching decision. Probe-confirmed
  // infeasible sides become fixings, after which the node re-solves and the
  // loop starts over on the tightened subproblem.
  std::optional<Branch> handle_solved_node(std::vector<BoundFix> fixes) {
    for (;;) {
      double zmax = -engine_.objective_min();
      if (zmax <= prune_threshold()) return std::nullopt;

      std::vector<Cand> cands;
      // Largest near-integral drift; nonzero means the snapped solution is
      // not an exact LP point and needs polishing before it becomes the
      // incumbent.
      int drift_var = -1;
      double drift_val = 0.0;
      double drift_score = 0.0;
      for (int j : binaries_) {
        double v = engine_.column_value(j);
        double score = std::fabs(v - std::lround(v));
        if (score > opts_.int_tol) {
          cands.push_back({j, v, 0.0, 0.0, false});
        } else if (score > drift_score) {
          drift_score = score;
          drift_var = j;
          drift_val = v;
        }
      }
      if (!cands.empty()) {
        SimplexEngine::BasisSnapshot basis = engine_.snapshot();
        SimplexEngine::FactorCache fac = engine_.factors();
        bool fixed_any = evaluate_candidates(zmax, fixes, basis, fac, cands);
        if (fixed_any) {
          apply_bounds(fixes);
          engine_.restore_with_factors(basis, fac);
          if (!relax_current()) return std::nullopt;
          continue;
        }
        const Cand* best = &cands[0];
        for (const Cand& c : cands) {
          if (score_of(c) > score_of(*best)) best = &c;
        }
        // Dive where the bound gives up less.
        int preferred = gain_down(*best) <= gain_up(*best) ? 0 : 1;
        return Branch{zmax,       best->var,        best->val,
                      preferred,  std::move(fixes), std::move(basis),
                      std::move(fac)};
      }
      if (drift_var < 0) {
        install_incumbent(zmax);
        return std::nullopt;
      }
      // Polish: re-solve with every binary pinned to its rounded value, so
      // the continuous part is exactly consistent with the integral
      // assignment.
      SimplexEngine::BasisSnapshot basis = engine_.snapshot();
      SimplexEngine::FactorCache fac = engine_.factors();
      std::vector<BoundFix> pinned = fixes;
      for (int j : binaries_) {
        double v = std::lround(engine_.column_value(j));
        pinned.push_back({j, v, v});
      }
      apply_bounds(pinned);
      LpStatus st = engine_.reoptimize();
      ++nodes_;
      if (st != LpStatus::kOptimal && st != LpStatus::kInfeasible) {
        st = engine_.solve_fresh();
      }
      if (st == LpStatus::kOptimal) {
        double pz = -engine_.objective_min();
        if (pz > incumbent_obj_) install_incumbent(pz);
        return std::nullopt;
      }
      if (st == LpStatus::kInfeasible) {
        // The rounding was load-bearing; branch on the largest drift instead.
        return Branch{zmax,
                      drift_var,
                      drift_val,
                      drift_val < 0.5 ? 0 : 1,
                      std::move(fixes),
                      std::move(basis),
                      std::move(fac)};
      }
      throw IntegrityError("polish relaxation did not converge");
    }
  }

  // Mean bound decay per unit of fractional distance; falls back to the
  // global average, then to a neutral constant, until the side is observed.
  double pc_estimate(int side, int var) const {
    if (pc_cnt_[side][var] > 0) return pc_sum_[side][var] / pc_cnt_[side][var];
    if (pc_global_cnt_[side] > 0) {
      return pc_global_sum_[side] / pc_global_cnt_[side];
    }
    return 1.0;
  }

  double gain_down(const Cand& c) const {
    return c.probed ? c.down_gain : pc_estimate(0, c.var) * c.val;
  }

  double gain_up(const Cand& c) const {
    return c.probed ? c.up_gain : pc_estimate(1, c.var) * (1.0 - c.val);
  }

  // Product rule: balanced decay on both children beats a one-sided jump.
  double score_of(const Cand& c) const {
    return std::max(gain_down(c), kGainEps) * std::max(gain_up(c), kGainEps);
  }

  void pc_record(int side, int var, double gain, double dist) {
    if (dist < 1e-6) return;
    pc_sum_[side][var] += gain / dist;
    ++pc_cnt_[side][var];
    pc_global_sum_[side] += gain / dist;
    ++pc_global_cnt_[side];
  }

  LpStatus probe_side(int var, double side, const std::vector<BoundFix>& fixes,
                      const SimplexEngine::BasisSnapshot& basis,
                      const SimplexEngine::FactorCache& fac, double* obj) {
    apply_bounds(fixes);
    engine_.set_bounds(var, side, side);
    engine_.restore_with_factors(basis, fac);
    return engine_.probe(kProbeIters, obj);
  }

  // Strong-probes the least reliable candidates in pseudocost-score order
  // and folds the measurements into the pseudocosts. A probe-confirmed
  // infeasible side becomes a fixing appended to `fixes`; returns true when
  // that happened, and the caller re-solves the tightened node.
  bool evaluate_candidates(double zmax, std::vector<BoundFix>& fixes,
                           const SimplexEngine::BasisSnapshot& basis,
                           const SimplexEngine::FactorCache& fac,
                           std::vector<Cand>& cands) {
    std::vector<int> order(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double sa = score_of(cands[a]);
      double sb = score_of(cands[b]);
      if (sa != sb) return sa > sb;
      return cands[a].var < cands[b].var;
    });

    int probes = 0;
    for (int idx : order) {
      if (probes >= kProbeCandidates) break;
      Cand& c = cands[idx];
      if (pc_cnt_[0][c.var] >= kReliable && pc_cnt_[1][c.var] >= kReliable) {
        continue;
      }
      ++probes;
      double pdown = 0.0;
      double pup = 0.0;
      LpStatus sdown = probe_side(c.var, 0.0, fixes, basis, fac, &pdown);
      LpStatus sup = probe_side(c.var, 1.0, fixes, basis, fac, &pup);
      bool down_inf = sdown == LpStatus::kInfeasible;
      bool up_inf = sup == LpStatus::kInfeasible;
      if (down_inf || up_inf) {
        // One child is dead, so the variable's value is decided at this
        // node. When both died the fixed side re-solves to infeasible and
        // fathoms the node.
        double side = down_inf ? 1.0 : 0.0;
        fixes.push_back({c.var, side, side});
        if (!down_inf) pc_record(0, c.var, std::max(0.0, zmax + pdown), c.val);
        if (!up_inf) {
          pc_record(1, c.var, std::max(0.0, zmax + pup), 1.0 - c.val);
        }
        return true;
      }
      c.down_gain = std::max(0.0, zmax + pdown);
      c.up_gain = std::max(0.0, zmax + pup);
      c.probed = true;
      pc_record(0, c.var, c.down_gain, c.val);
      pc_record(1, c.var, c.up_gain, 1.0 - c.val);
    }
    return false;
  }

  void install_incumbent(double zmax) {
    incumbent_obj_ = zmax;
    incumbent_.resize(root_lower_.size());
    for (std::size_t j = 0; j < incumbent_.size(); ++j) {
      double v = engine_.column_value(static_cast<int>(j));
      if (model_.variables()[j].kind == VarKind::kBinary) {
        v = std::lround(v);
      }
      incumbent_[j] = v;
    }
  }

  SolveResult finish(SolveStatus status) {
    result_.status = status;
    result_.nodes = nodes_;
    result_.lp_iterations = engine_.iterations();
    result_.has_solution = incumbent_obj_ > -kInf;
    if (result_.has_solution) {
      result_.objective = incumbent_obj_;
      result_.values = incumbent_;
    }
    double bound = incumbent_obj_;
    if (status == SolveStatus::kNodeLimit || status == SolveStatus::kTimeLimit) {
      if (!open_.empty()) bound = std::max(bound, open_.top().bound);
    }
    result_.best_bound = bound;
    if (status == SolveStatus::kOptimal && !result_.has_solution) {
      result_.status = SolveStatus::kInfeasible;
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0_;
    result_.wall_time_s = dt.count();
    return result_;
  }

  static constexpr int kProbeCandidates = 8;
  static constexpr long kProbeIters = 50;
  static constexpr long kReliable = 4;
  static constexpr double kGainEps = 1e-6;

  const IlpModel& model_;
  SolverOptions opts_;
  SimplexEngine engine_;
  std::vector<double> root_lower_, root_upper_;
  std::vector<int> binaries_;
  std::vector<double> pc_sum_[2];
  std::vector<long> pc_cnt_[2];
  double pc_global_sum_[2] = {0.0, 0.0};
  long pc_global_cnt_[2] = {0, 0};
  std::optional<SolveStatus> stop_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  double incumbent_obj_ = -kInf;
  std::vector<double> incumbent_;
  long nodes_ = 0;
  long seq_ = 0;
  SolveResult result_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNodeLimit:
      return "node-limit";
    case SolveStatus::kTimeLimit:
      return "time-limit";
  }
  return "unknown";
}

std::map<std::string, double> SolveResult::named_values(
    const IlpModel& model) const {
  std::map<std::string, double> out;
  if (!has_solution) return out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    out[model.variables()[j].name] = values[j];
  }
  return out;
}

SolveResult solve_model(const IlpModel& model, const SolverOptions& options) {
  model.check_wellformed();
  BranchAndBound bnb(model, options);
  return bnb.run();
}

SolveResult lp_relax_solve(const IlpModel& model, const SolverOptions& options) {
  model.check_wellformed();
  auto t0 = std::chrono::steady_clock::now();
  SimplexEngine engine(core_from_model(model),
                       options.parallel && kernels::parallel_available()
                           ? kernels::Mode::kParallel
                           : kernels::Mode::kSerial);
  LpStatus st = engine.solve_fresh();
  SolveResult out;
  out.nodes = 1;
  out.lp_iterations = engine.iterations();
  if (st == LpStatus::kOptimal) {
    out.status = SolveStatus::kOptimal;
    out.has_solution = true;
    out.objective = -engine.objective_min();
    out.best_bound = out.objective;
    int n = static_cast<int>(model.variables().size());
    out.values.resize(n);
    for (int j = 0; j < n; ++j) out.values[j] = engine.column_value(j);
  } else if (st == LpStatus::kInfeasible) {
    out.status = SolveStatus::kInfeasible;
  } else {
    throw IntegrityError("relaxation did not converge");
  }
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  out.wall_time_s = dt.count();
  return out;
}

}  // namespace vsn
