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

#include "solver/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "vsn/common.hpp"

namespace vsn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SimplexEngine::SimplexEngine(LpCore core, kernels::Mode mode)
    : core_(std::move(core)), mode_(mode) {
  if (core_.ncols() != core_.n_struct + core_.m) {
    throw std::logic_error("core must contain exactly one slack per row");
  }
  equilibrate();
  ensure_artificials();
  int n = core_.ncols();
  int m = core_.m;
  cost_.assign(n, 0.0);
  for (int j = 0; j < core_.n_struct + m; ++j) cost_[j] = core_.obj[j];
  vstat_.assign(n, static_cast<std::uint8_t>(VStat::kAtLower));
  basic_.assign(m, -1);
  basic_pos_.assign(n, -1);
  binv_.assign(static_cast<long>(m) * m, 0.0);
  xb_.assign(m, 0.0);
  y_.assign(m, 0.0);
  d_.assign(n, 0.0);
  w_.assign(m, 0.0);
  alpha_.assign(n, 0.0);
  dense_col_.assign(m, 0.0);
}

namespace {

// Nearest power of two, so scaling multiplies are exact in binary floating
// point. Clamped to keep degenerate rows or columns from blowing up scales.
double pow2_scale(double raw) {
  if (!(raw > 0.0) || !std::isfinite(raw)) return 1.0;
  int e = 0;
  std::frexp(raw, &e);
  e = std::clamp(e, -20, 20);
  return std::ldexp(1.0, e);
}

}  // namespace

// Geometric-mean equilibration of the structural part of the matrix. The
// model mixes per-bit energy coefficients near 1e-8 with bandwidth caps near
// 1e6, and pivot tolerances are absolute, so unscaled bases go bad. Scales
// are powers of two: coefficients stay exact and solves stay deterministic.
void SimplexEngine::equilibrate() {
  int m = core_.m;
  row_scale_.assign(m, 1.0);
  col_scale_.assign(core_.ncols(), 1.0);
  if (std::getenv("VSN_NOSCALE") != nullptr) return;  // TEMP A/B diagnosis
  std::vector<double> row_min(m), row_max(m);
  for (int pass = 0; pass < 3; ++pass) {
    for (int j = 0; j < core_.n_struct; ++j) {
      double lo = kInf, hi = 0.0;
      const auto& rows = core_.col_rows[j];
      const auto& vals = core_.col_vals[j];
      for (std::size_t t = 0; t < rows.size(); ++t) {
        double a = std::fabs(vals[t]) * row_scale_[rows[t]] * col_scale_[j];
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0) col_scale_[j] /= pow2_scale(std::sqrt(lo * hi));
    }
    std::fill(row_min.begin(), row_min.end(), kInf);
    std::fill(row_max.begin(), row_max.end(), 0.0);
    for (int j = 0; j < core_.n_struct; ++j) {
      const auto& rows = core_.col_rows[j];
      const auto& vals = core_.col_vals[j];
      for (std::size_t t = 0; t < rows.size(); ++t) {
        double a = std::fabs(vals[t]) * row_scale_[rows[t]] * col_scale_[j];
        if (a == 0.0) continue;
        int r = rows[t];
        row_min[r] = std::min(row_min[r], a);
        row_max[r] = std::max(row_max[r], a);
      }
    }
    for (int r = 0; r < m; ++r) {
      if (row_max[r] > 0.0) {
        row_scale_[r] /= pow2_scale(std::sqrt(row_min[r] * row_max[r]));
      }
    }
  }
  // Slack columns keep a unit coefficient so the slack basis stays identity.
  for (int r = 0; r < m; ++r) col_scale_[core_.n_struct + r] = 1.0 / row_scale_[r];
  for (int j = 0; j < core_.ncols(); ++j) {
    double s = col_scale_[j];
    const auto& rows = core_.col_rows[j];
    auto& vals = core_.col_vals[j];
    for (std::size_t t = 0; t < rows.size(); ++t) {
      vals[t] *= row_scale_[rows[t]] * s;
    }
    core_.obj[j] *= s;
    core_.lower[j] /= s;
    core_.upper[j] /= s;
  }
  for (int r = 0; r < m; ++r) core_.rhs[r] *= row_scale_[r];
}

void SimplexEngine::ensure_artificials() {
  if (n_art_begin_ > 0) return;
  n_art_begin_ = core_.ncols();
  for (int r = 0; r < core_.m; ++r) {
    core_.col_rows.push_back({r});
    core_.col_vals.push_back({1.0});
    core_.lower.push_back(0.0);
    core_.upper.push_back(0.0);
    core_.obj.push_back(0.0);
    col_scale_.push_back(1.0);
  }
}

kernels::SparseColView SimplexEngine::col_view(int j) const {
  return {core_.col_rows[j].data(), core_.col_vals[j].data(),
          static_cast<int>(core_.col_rows[j].size())};
}

double SimplexEngine::nonbasic_value(int col) const {
  return vstat_[col] == static_cast<std::uint8_t>(VStat::kAtUpper)
             ? core_.upper[col]
             : core_.lower[col];
}

double SimplexEngine::scaled_value(int col) const {
  int pos = basic_pos_[col];
  return pos >= 0 ? xb_[pos] : nonbasic_value(col);
}

double SimplexEngine::column_value(int col) const {
  return scaled_value(col) * col_scale_[col];
}

double SimplexEngine::objective_min() const {
  // Scaled cost times scaled value equals the original product.
  double s = 0.0;
  for (int j = 0; j < core_.ncols(); ++j) {
    if (cost_[j] != 0.0) s += cost_[j] * scaled_value(j);
  }
  return s;
}

void SimplexEngine::set_bounds(int col, double lower, double upper) {
  core_.lower[col] = lower / col_scale_[col];
  core_.upper[col] = upper / col_scale_[col];
}

SimplexEngine::BasisSnapshot SimplexEngine::snapshot() const {
  return {vstat_, basic_};
}

void SimplexEngine::restore(const BasisSnapshot& snap) {
  if (static_cast<int>(snap.vstat.size()) != core_.ncols() ||
      static_cast<int>(snap.basic.size()) != core_.m) {
    throw IntegrityError("basis snapshot does not match problem shape");
  }
  if (basic_ != snap.basic) factors_stale_ = true;
  vstat_ = snap.vstat;
  basic_ = snap.basic;
  std::fill(basic_pos_.begin(), basic_pos_.end(), -1);
  for (int r = 0; r < core_.m; ++r) {
    int c = basic_[r];
    if (c < 0 || c >= core_.ncols() ||
        vstat_[c] != static_cast<std::uint8_t>(VStat::kBasic)) {
      throw IntegrityError("inconsistent basis snapshot");
    }
    basic_pos_[c] = r;
  }
}

void SimplexEngine::restore_with_factors(const BasisSnapshot& snap,
                                         const FactorCache& fc) {
  restore(snap);
  binv_ = fc.binv;
  pivots_since_refactor_ = fc.pivots;
  factors_stale_ = false;
}

void SimplexEngine::refactor() {
  int m = core_.m;
  std::vector<double> a(static_cast<long>(m) * m, 0.0);
  for (int r = 0; r < m; ++r) {
    int c = basic_[r];
    const auto& rows = core_.col_rows[c];
    const auto& vals = core_.col_vals[c];
    for (std::size_t t = 0; t < rows.size(); ++t) {
      a[static_cast<long>(rows[t]) * m + r] = vals[t];
    }
  }
  std::fill(binv_.begin(), binv_.end(), 0.0);
  for (int r = 0; r < m; ++r) binv_[static_cast<long>(r) * m + r] = 1.0;

  for (int k = 0; k < m; ++k) {
    int p = k;
    double best = std::fabs(a[static_cast<long>(k) * m + k]);
    for (int r = k + 1; r < m; ++r) {
      double v = std::fabs(a[static_cast<long>(r) * m + k]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best < 1e-11) throw SingularBasisError{};
    if (p != k) {
      std::swap_ranges(a.begin() + static_cast<long>(p) * m,
                       a.begin() + static_cast<long>(p + 1) * m,
                       a.begin() + static_cast<long>(k) * m);
      std::swap_ranges(binv_.begin() + static_cast<long>(p) * m,
                       binv_.begin() + static_cast<long>(p + 1) * m,
                       binv_.begin() + static_cast<long>(k) * m);
    }
    double inv = 1.0 / a[static_cast<long>(k) * m + k];
    double* ak = a.data() + static_cast<long>(k) * m;
    double* bk = binv_.data() + static_cast<long>(k) * m;
    for (int c = 0; c < m; ++c) {
      ak[c] *= inv;
      bk[c] *= inv;
    }
    for (int r = 0; r < m; ++r) {
      if (r == k) continue;
      double f = a[static_cast<long>(r) * m + k];
      if (f == 0.0) continue;
      double* ar = a.data() + static_cast<long>(r) * m;
      double* br = binv_.data() + static_cast<long>(r) * m;
      for (int c = 0; c < m; ++c) {
        ar[c] -= f * ak[c];
        br[c] -= f * bk[c];
      }
    }
  }
  pivots_since_refactor_ = 0;
  factors_stale_ = false;
}

void SimplexEngine::compute_xb() {
  int m = core_.m;
  std::vector<double> rhs = core_.rhs;
  for (int j = 0; j < core_.ncols(); ++j) {
    if (vstat_[j] == static_cast<std::uint8_t>(VStat::kBasic)) continue;
    double v = nonbasic_value(j);
    if (v == 0.0) continue;
    const auto& rows = core_.col_rows[j];
    const auto& vals = core_.col_vals[j];
    for (std::size_t t = 0; t < rows.size(); ++t) rhs[rows[t]] -= vals[t] * v;
  }
  kernels::dense_matvec(binv_.data(), rhs.data(), xb_.data(), m, mode_);
}

void SimplexEngine::compute_duals() {
  int m = core_.m;
  std::vector<double> cb(m);
  for (int r = 0; r < m; ++r) cb[r] = cost_[basic_[r]];
  kernels::dense_matvec_t(binv_.data(), cb.data(), y_.data(), m, mode_);
  static thread_local std::vector<kernels::SparseColView> views;
  views.clear();
  views.reserve(core_.ncols());
  for (int j = 0; j < core_.ncols(); ++j) views.push_back(col_view(j));
  kernels::price_columns(views.data(), cost_.data(), y_.data(), d_.data(),
                         core_.ncols(), mode_);
}

void SimplexEngine::maybe_refactor() {
  if (pivots_since_refactor_ >= refactor_every_) {
    refactor();
    compute_xb();
  }
}

// Terminal verdicts and small pivots are only trusted when the factors are
// fresh; otherwise refactor and let the caller re-derive the step.
bool SimplexEngine::confirm_on_fresh_factors() {
  if (pivots_since_refactor_ == 0) return true;
  refactor();
  compute_xb();
  return false;
}

void SimplexEngine::pivot(int entering, int dir, int leave_row, double t,
                          bool leave_upper) {
  int m = core_.m;
  double enter_value = nonbasic_value(entering) + dir * t;
  for (int r = 0; r < m; ++r) xb_[r] -= dir * t * w_[r];
  int leaving = basic_[leave_row];
  vstat_[leaving] = static_cast<std::uint8_t>(leave_upper ? VStat::kAtUpper
                                                          : VStat::kAtLower);
  basic_pos_[leaving] = -1;
  vstat_[entering] = static_cast<std::uint8_t>(VStat::kBasic);
  basic_pos_[entering] = leave_row;
  basic_[leave_row] = entering;
  xb_[leave_row] = enter_value;
  kernels::rank1_update(binv_.data(), w_.data(), leave_row, m, mode_);
  ++pivots_since_refactor_;
}

LpStatus SimplexEngine::primal_loop(long iter_limit) {
  int m = core_.m;
  shunned_.assign(core_.ncols(), 0);
  for (long it = 0; it < iter_limit; ++it) {
    ++iterations_;
    maybe_refactor();
    compute_duals();
    std::fill(shunned_.begin(), shunned_.end(), 0);

    bool restart = false;
    int q, dir, leave_row;
    double t_best, best_piv, span;
    bool leave_upper;
    for (;;) {
      q = -1;
      double best_score = kDualTol;
      for (int j = 0; j < core_.ncols(); ++j) {
        if (shunned_[j]) continue;
        if (vstat_[j] == static_cast<std::uint8_t>(VStat::kBasic)) continue;
        if (core_.lower[j] == core_.upper[j]) continue;
        double dj = d_[j];
        bool at_lower =
            vstat_[j] == static_cast<std::uint8_t>(VStat::kAtLower);
        bool eligible = at_lower ? dj < -kDualTol : dj > kDualTol;
        if (!eligible) continue;
        if (bland_) {
          q = j;
          break;
        }
        if (std::fabs(dj) > best_score) {
          best_score = std::fabs(dj);
          q = j;
        }
      }
      if (q < 0) {
        if (!confirm_on_fresh_factors()) {
          restart = true;
          break;
        }
        return LpStatus::kOptimal;
      }
      dir = vstat_[q] == static_cast<std::uint8_t>(VStat::kAtLower) ? 1 : -1;

      std::fill(dense_col_.begin(), dense_col_.end(), 0.0);
      {
        const auto& rows = core_.col_rows[q];
        const auto& vals = core_.col_vals[q];
        for (std::size_t t = 0; t < rows.size(); ++t) {
          dense_col_[rows[t]] = vals[t];
        }
      }
      kernels::dense_matvec(binv_.data(), dense_col_.data(), w_.data(), m,
                            mode_);

      t_best = kInf;
      leave_row = -1;
      leave_upper = false;
      best_piv = 0.0;
      for (int r = 0; r < m; ++r) {
        double g = -dir * w_[r];
        double cap;
        bool hit_upper;
        if (g > kPivTol) {
          double ub = core_.upper[basic_[r]];
          if (ub == kInf) continue;
          cap = (ub - xb_[r]) / g;
          hit_upper = true;
        } else if (g < -kPivTol) {
          double lb = core_.lower[basic_[r]];
          if (lb == -kInf) continue;
          cap = (lb - xb_[r]) / g;
          hit_upper = false;
        } else {
          continue;
        }
        if (cap < 0.0) cap = 0.0;
        if (cap < t_best - 1e-12) {
          t_best = cap;
          leave_row = r;
          leave_upper = hit_upper;
          best_piv = std::fabs(w_[r]);
        } else if (leave_row >= 0 && cap < t_best + 1e-12) {
          bool take = bland_ ? basic_[r] < basic_[leave_row]
                             : std::fabs(w_[r]) > best_piv;
          if (take) {
            leave_row = r;
            leave_upper = hit_upper;
            best_piv = std::fabs(w_[r]);
          }
        }
      }

      span = core_.upper[q] - core_.lower[q];
      if (leave_row >= 0 || span < kInf) break;

      // No blocker anywhere: unbounded only if the direction genuinely
      // improves. Recomputing the reduced cost through the ftran vector
      // avoids the cancellation that created d_[q] in the first place.
      if (!confirm_on_fresh_factors()) {
        restart = true;
        break;
      }
      double exact_dj = cost_[q];
      for (int r = 0; r < m; ++r) exact_dj -= cost_[basic_[r]] * w_[r];
      bool improving = dir > 0 ? exact_dj < -kDualTol : exact_dj > kDualTol;
      if (improving) return LpStatus::kUnbounded;
      shunned_[q] = 1;
    }
    if (restart) continue;

    double t;
    if (span < t_best - 1e-12) {
      // Bound flip: the entering variable crosses to its other bound before
      // any basic variable blocks.
      t = span;
      for (int r = 0; r < m; ++r) xb_[r] -= dir * t * w_[r];
      vstat_[q] = static_cast<std::uint8_t>(
          vstat_[q] == static_cast<std::uint8_t>(VStat::kAtLower)
              ? VStat::kAtUpper
              : VStat::kAtLower);
    } else {
      if (best_piv < kSmallPivot && !confirm_on_fresh_factors()) continue;
      t = t_best;
      pivot(q, dir, leave_row, t, leave_upper);
    }

    if (t <= 1e-10) {
      if (++degenerate_streak_ > kBlandAfter) bland_ = true;
    } else {
      degenerate_streak_ = 0;
      bland_ = false;
    }
  }
  return LpStatus::kIterLimit;
}

LpStatus SimplexEngine::dual_loop(long iter_limit) {
  int m = core_.m;
  for (long it = 0; it < iter_limit; ++it) {
    ++iterations_;
    maybe_refactor();

    int rv = -1;
    double worst = kXTol;
    for (int r = 0; r < m; ++r) {
      int c = basic_[r];
      double below = core_.lower[c] - xb_[r];
      double above = xb_[r] - core_.upper[c];
      double v = std::max(below, above);
      if (v > worst) {
        worst = v;
        rv = r;
      }
    }
    if (rv < 0) {
      if (!confirm_on_fresh_factors()) continue;
      return LpStatus::kOptimal;
    }

    compute_duals();
    int sigma = xb_[rv] > core_.upper[basic_[rv]] ? 1 : -1;
    const double* rho = binv_.data() + static_cast<long>(rv) * m;
    static thread_local std::vector<kernels::SparseColView> views;
    views.clear();
    views.reserve(core_.ncols());
    for (int j = 0; j < core_.ncols(); ++j) views.push_back(col_view(j));
    kernels::tableau_row(views.data(), rho, alpha_.data(), core_.ncols(),
                         mode_);

    int q = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    for (int j = 0; j < core_.ncols(); ++j) {
      if (vstat_[j] == static_cast<std::uint8_t>(VStat::kBasic)) continue;
      if (core_.lower[j] == core_.upper[j]) continue;
      double sa = sigma * alpha_[j];
      bool at_lower = vstat_[j] == static_cast<std::uint8_t>(VStat::kAtLower);
      if (at_lower ? sa <= kPivTol : sa >= -kPivTol) continue;
      double ratio = d_[j] / sa;
      if (ratio < 0.0) ratio = 0.0;
      if (ratio < best_ratio - 1e-12 ||
          (q >= 0 && ratio < best_ratio + 1e-12 &&
           std::fabs(alpha_[j]) > best_alpha)) {
        best_ratio = ratio;
        best_alpha = std::fabs(alpha_[j]);
        q = j;
      }
    }
    if (q < 0) {
      if (!confirm_on_fresh_factors()) continue;
      return LpStatus::kInfeasible;
    }
    if (std::fabs(alpha_[q]) < kSmallPivot && !confirm_on_fresh_factors()) {
      continue;
    }

    int dir = vstat_[q] == static_cast<std::uint8_t>(VStat::kAtLower) ? 1 : -1;
    double denom = sigma * dir * alpha_[q];
    double viol = sigma > 0 ? xb_[rv] - core_.upper[basic_[rv]]
                            : core_.lower[basic_[rv]] - xb_[rv];
    double t = viol / denom;

    std::fill(dense_col_.begin(), dense_col_.end(), 0.0);
    {
      const auto& rows = core_.col_rows[q];
      const auto& vals = core_.col_vals[q];
      for (std::size_t tt = 0; tt < rows.size(); ++tt) {
        dense_col_[rows[tt]] = vals[tt];
      }
    }
    kernels::dense_matvec(binv_.data(), dense_col_.data(), w_.data(), m, mode_);
    pivot(q, dir, rv, t, sigma > 0);
  }
  return LpStatus::kIterLimit;
}

void SimplexEngine::start_basis() {
  int m = core_.m;
  for (int j = 0; j < core_.ncols(); ++j) {
    if (j >= n_art_begin_) {
      core_.lower[j] = 0.0;
      core_.upper[j] = 0.0;
      vstat_[j] = static_cast<std::uint8_t>(VStat::kAtLower);
      continue;
    }
    vstat_[j] = static_cast<std::uint8_t>(
        core_.lower[j] > -kInf ? VStat::kAtLower : VStat::kAtUpper);
  }
  std::fill(basic_pos_.begin(), basic_pos_.end(), -1);

  std::vector<double> residual = core_.rhs;
  for (int j = 0; j < n_art_begin_; ++j) {
    double v = nonbasic_value(j);
    if (v == 0.0) continue;
    const auto& rows = core_.col_rows[j];
    const auto& vals = core_.col_vals[j];
    for (std::size_t t = 0; t < rows.size(); ++t) residual[rows[t]] -= vals[t] * v;
  }

  for (int r = 0; r < m; ++r) {
    int slack = core_.n_struct + r;
    int art = n_art_begin_ + r;
    double res = residual[r];
    double ls = core_.lower[slack];
    double us = core_.upper[slack];
    if (res >= ls && res <= us) {
      basic_[r] = slack;
      basic_pos_[slack] = r;
      vstat_[slack] = static_cast<std::uint8_t>(VStat::kBasic);
      xb_[r] = res;
    } else {
      double clamped = std::clamp(res, ls, us);
      vstat_[slack] = static_cast<std::uint8_t>(
          clamped == ls ? VStat::kAtLower : VStat::kAtUpper);
      double v = res - clamped;
      if (v > 0.0) {
        core_.lower[art] = 0.0;
        core_.upper[art] = kInf;
      } else {
        core_.lower[art] = -kInf;
        core_.upper[art] = 0.0;
      }
      basic_[r] = art;
      basic_pos_[art] = r;
      vstat_[art] = static_cast<std::uint8_t>(VStat::kBasic);
      xb_[r] = v;
    }
  }
  // Slack values clamped to a nonzero bound shift the residuals of other
  // rows only through their own row, which the artificial absorbs; the
  // identity start basis stays exact.
  std::fill(binv_.begin(), binv_.end(), 0.0);
  for (int r = 0; r < m; ++r) binv_[static_cast<long>(r) * m + r] = 1.0;
  pivots_since_refactor_ = 0;
  factors_stale_ = false;
  degenerate_streak_ = 0;
  bland_ = false;
}

LpStatus SimplexEngine::solve_fresh() {
  refactor_every_ = kRefactorEvery;
  for (int attempt = 0;; ++attempt) {
    try {
      return solve_fresh_inner();
    } catch (const SingularBasisError&) {
      if (attempt >= 1) throw IntegrityError("singular basis");
      // Exact factors on every step make each accepted pivot exact, so a
      // dependent column can no longer slip into the basis.
      refactor_every_ = 1;
    }
  }
}

LpStatus SimplexEngine::solve_fresh_inner() {
  start_basis();

  bool need_phase1 = false;
  for (int r = 0; r < core_.m; ++r) {
    if (basic_[r] >= n_art_begin_) {
      need_phase1 = true;
      break;
    }
  }
  if (need_phase1) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int r = 0; r < core_.m; ++r) {
      int c = basic_[r];
      if (c >= n_art_begin_) cost_[c] = xb_[r] >= 0.0 ? 1.0 : -1.0;
    }
    LpStatus st = primal_loop(kPrimalIterLimit);
    if (st == LpStatus::kIterLimit) return st;
    double scale = 1.0;
    for (double b : core_.rhs) scale = std::max(scale, std::fabs(b));
    if (objective_min() > 1e-6 * scale) return LpStatus::kInfeasible;
    for (int j = n_art_begin_; j < core_.ncols(); ++j) {
      core_.lower[j] = 0.0;
      core_.upper[j] = 0.0;
      if (vstat_[j] != static_cast<std::uint8_t>(VStat::kBasic)) {
        vstat_[j] = static_cast<std::uint8_t>(VStat::kAtLower);
      }
    }
  }

  for (int j = 0; j < core_.ncols(); ++j) cost_[j] = core_.obj[j];
  degenerate_streak_ = 0;
  bland_ = false;
  return primal_loop(kPrimalIterLimit);
}

LpStatus SimplexEngine::reoptimize() {
  refactor_every_ = kRefactorEvery;
  try {
    if (factors_stale_) refactor();
    compute_xb();
    for (int j = 0; j < core_.ncols(); ++j) cost_[j] = core_.obj[j];
    LpStatus st = dual_loop(kDualIterLimit);
    if (st == LpStatus::kOptimal) st = primal_loop(kPrimalIterLimit);
    if (st == LpStatus::kIterLimit) return solve_fresh();
    return st;
  } catch (const SingularBasisError&) {
    // The inherited basis degraded; a cold start is always available.
    return solve_fresh();
  }
}

LpStatus SimplexEngine::probe(long iter_limit, double* obj_min_out) {
  refactor_every_ = kRefactorEvery;
  try {
    if (factors_stale_) refactor();
    compute_xb();
    for (int j = 0; j < core_.ncols(); ++j) cost_[j] = core_.obj[j];
    LpStatus st = dual_loop(iter_limit);
    *obj_min_out = objective_min();
    return st;
  } catch (const SingularBasisError&) {
    // No usable measurement; the caller restores its snapshot regardless.
    *obj_min_out = -kInf;
    return LpStatus::kIterLimit;
  }
}

double SimplexEngine::primal_residual() const {
  std::vector<double> act(core_.m, 0.0);
  for (int j = 0; j < core_.ncols(); ++j) {
    double v = scaled_value(j);
    if (v == 0.0) continue;
    const auto& rows = core_.col_rows[j];
    const auto& vals = core_.col_vals[j];
    for (std::size_t t = 0; t < rows.size(); ++t) act[rows[t]] += vals[t] * v;
  }
  // Per-row residuals are reported in original row units.
  double worst = 0.0;
  for (int r = 0; r < core_.m; ++r) {
    worst = std::max(worst, std::fabs(act[r] - core_.rhs[r]) / row_scale_[r]);
  }
  return worst;
}

}  // namespace vsn
