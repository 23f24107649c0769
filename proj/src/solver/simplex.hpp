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

#ifndef VSN_SOLVER_SIMPLEX_HPP
#define VSN_SOLVER_SIMPLEX_HPP

#include <cstdint>
#include <vector>

#include "solver/kernels.hpp"

namespace vsn {

// Minimization LP in computational form: min c'x s.t. Ax = b, l <= x <= u,
// where A already contains one slack column per row (columns
// n_struct .. n_struct+m-1, unit coefficient). Artificial columns are
// appended by the engine.
struct LpCore {
  int m = 0;
  int n_struct = 0;
  std::vector<std::vector<int>> col_rows;
  std::vector<std::vector<double>> col_vals;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> obj;
  std::vector<double> rhs;

  int ncols() const { return static_cast<int>(col_rows.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterLimit };

enum class VStat : std::uint8_t { kBasic, kAtLower, kAtUpper };

// Bounded-variable revised simplex over a dense basis inverse. Fresh solves
// run two phases from the slack basis with per-row artificials; reoptimize()
// runs the dual simplex from the installed basis after bound changes, which
// is how branch-and-bound nodes are processed.
//
// The constructor equilibrates rows and columns (geometric mean) so pivot
// tolerances act on a well-scaled matrix; every public accessor converts to
// and from original units, so callers never see the scaling.
class SimplexEngine {
 public:
  SimplexEngine(LpCore core, kernels::Mode mode);

  LpStatus solve_fresh();
  LpStatus reoptimize();

  // Branching probe: runs the dual simplex from the installed basis under an
  // iteration cap and reports the objective reached through *obj_min_out.
  // Dual steps never decrease the minimization objective, so a capped run
  // still measures how far the child has already moved. The basis is left
  // wherever the loop stopped; callers restore their snapshot afterwards.
  // Probe results rank branching candidates only and never prune.
  LpStatus probe(long iter_limit, double* obj_min_out);

  void set_bounds(int col, double lower, double upper);
  double lower_bound(int col) const { return core_.lower[col] * col_scale_[col]; }
  double upper_bound(int col) const { return core_.upper[col] * col_scale_[col]; }

  double objective_min() const;
  double column_value(int col) const;
  int rows() const { return core_.m; }
  int structural_count() const { return core_.n_struct; }
  long iterations() const { return iterations_; }

  struct BasisSnapshot {
    std::vector<std::uint8_t> vstat;
    std::vector<int> basic;
  };
  BasisSnapshot snapshot() const;
  void restore(const BasisSnapshot& snap);

  // The basis inverse with its drift counter. Reinstalling a cache alongside
  // its snapshot skips the refactorization a plain restore() would force;
  // the counter keeps confirm-on-fresh-factors honest about inherited drift.
  struct FactorCache {
    std::vector<double> binv;
    int pivots = 0;
  };
  FactorCache factors() const { return {binv_, pivots_since_refactor_}; }
  void restore_with_factors(const BasisSnapshot& snap, const FactorCache& fc);

  // Max-norm residual of Ax = b at the current point; used by tests and as
  // a final sanity gate.
  double primal_residual() const;

 private:
  static constexpr double kDualTol = 1e-7;
  static constexpr double kPivTol = 1e-7;
  static constexpr double kXTol = 1e-7;
  // Pivots below this are only accepted when computed from fresh factors;
  // accumulated update error can fake a nonzero tableau entry of this size.
  static constexpr double kSmallPivot = 1e-5;
  static constexpr int kRefactorEvery = 64;
  static constexpr int kBlandAfter = 256;
  static constexpr long kPrimalIterLimit = 200000;
  static constexpr long kDualIterLimit = 20000;

  // Internal signal: the basis column list went linearly dependent, which
  // means drifted factors admitted a bad pivot. Recovery restarts the solve.
  struct SingularBasisError {};

  void equilibrate();
  void ensure_artificials();
  void start_basis();
  LpStatus solve_fresh_inner();
  void refactor();
  bool confirm_on_fresh_factors();
  void compute_xb();
  void compute_duals();
  LpStatus primal_loop(long iter_limit);
  LpStatus dual_loop(long iter_limit);
  void pivot(int entering, int dir, int leave_row, double t, bool leave_upper);
  void maybe_refactor();
  double nonbasic_value(int col) const;
  double scaled_value(int col) const;
  kernels::SparseColView col_view(int j) const;

  LpCore core_;
  kernels::Mode mode_;
  int n_art_begin_ = 0;  // first artificial column id
  std::vector<double> row_scale_;  // scaled row = row_scale * original row
  std::vector<double> col_scale_;  // original value = col_scale * scaled value
  std::vector<double> cost_;     // active objective (phase 1 or 2)
  std::vector<std::uint8_t> vstat_;
  std::vector<int> basic_;       // per row: basic column
  std::vector<int> basic_pos_;   // per column: row or -1
  std::vector<double> binv_;     // row-major m x m
  std::vector<double> xb_;       // per row: value of basic column
  std::vector<double> y_;        // duals scratch
  std::vector<double> d_;        // reduced costs scratch
  std::vector<double> w_;        // ftran scratch
  std::vector<double> alpha_;    // dual row scratch
  std::vector<double> dense_col_;
  std::vector<std::uint8_t> shunned_;  // per-iteration noise-column marks
  long iterations_ = 0;
  int pivots_since_refactor_ = 0;
  bool factors_stale_ = false;  // basis changed under binv_ via restore()
  int refactor_every_ = kRefactorEvery;
  int degenerate_streak_ = 0;
  bool bland_ = false;
};

}  // namespace vsn

#endif  // VSN_SOLVER_SIMPLEX_HPP
