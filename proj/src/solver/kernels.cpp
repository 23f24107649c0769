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

#include "solver/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vsn::kernels {

namespace {
inline double dot_row(const double* row, const double* v, int m) {
  double s = 0.0;
  for (int c = 0; c < m; ++c) s += row[c] * v[c];
  return s;
}

inline double dot_sparse(const SparseColView& col, const double* y) {
  double s = 0.0;
  for (int t = 0; t < col.nnz; ++t) s += col.val[t] * y[col.row[t]];
  return s;
}
}  // namespace

bool parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void dense_matvec(const double* binv, const double* v, double* w, int m,
                  Mode mode) {
  if (mode == Mode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int r = 0; r < m; ++r) w[r] = dot_row(binv + static_cast<long>(r) * m, v, m);
    return;
#endif
  }
  for (int r = 0; r < m; ++r) w[r] = dot_row(binv + static_cast<long>(r) * m, v, m);
}

void dense_matvec_t(const double* binv, const double* cb, double* y, int m,
                    Mode mode) {
  if (mode == Mode::kParallel) {
#ifdef _OPENMP
    // Per-element column sums, each accumulated in ascending r exactly like
    // the serial loop nest, so the result does not depend on thread count.
#pragma omp parallel for schedule(static)
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int r = 0; r < m; ++r) s += cb[r] * binv[static_cast<long>(r) * m + c];
      y[c] = s;
    }
    return;
#endif
  }
  for (int c = 0; c < m; ++c) y[c] = 0.0;
  for (int r = 0; r < m; ++r) {
    double f = cb[r];
    if (f == 0.0) continue;
    const double* row = binv + static_cast<long>(r) * m;
    for (int c = 0; c < m; ++c) y[c] += f * row[c];
  }
}

void rank1_update(double* binv, const double* w, int rp, int m, Mode mode) {
  double* prow = binv + static_cast<long>(rp) * m;
  double inv_pivot = 1.0 / w[rp];
  for (int c = 0; c < m; ++c) prow[c] *= inv_pivot;
  if (mode == Mode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int r = 0; r < m; ++r) {
      if (r == rp || w[r] == 0.0) continue;
      double f = w[r];
      double* row = binv + static_cast<long>(r) * m;
      for (int c = 0; c < m; ++c) row[c] -= f * prow[c];
    }
    return;
#endif
  }
  for (int r = 0; r < m; ++r) {
    if (r == rp || w[r] == 0.0) continue;
    double f = w[r];
    double* row = binv + static_cast<long>(r) * m;
    for (int c = 0; c < m; ++c) row[c] -= f * prow[c];
  }
}

void price_columns(const SparseColView* cols, const double* c, const double* y,
                   double* d, int n, Mode mode) {
  if (mode == Mode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) d[j] = c[j] - dot_sparse(cols[j], y);
    return;
#endif
  }
  for (int j = 0; j < n; ++j) d[j] = c[j] - dot_sparse(cols[j], y);
}

void tableau_row(const SparseColView* cols, const double* rho, double* alpha,
                 int n, Mode mode) {
  if (mode == Mode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) alpha[j] = dot_sparse(cols[j], rho);
    return;
#endif
  }
  for (int j = 0; j < n; ++j) alpha[j] = dot_sparse(cols[j], rho);
}

}  // namespace vsn::kernels
