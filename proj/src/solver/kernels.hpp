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

#ifndef VSN_SOLVER_KERNELS_HPP
#define VSN_SOLVER_KERNELS_HPP

#include <cstdint>
#include <vector>

namespace vsn::kernels {

enum class Mode { kSerial, kParallel };

// The parallel variants split work elementwise with a fixed per-element
// summation order, so serial and parallel results are bitwise identical for
// any thread count.

// w[r] = dot(binv[r, :], v) for a row-major m x m matrix.
void dense_matvec(const double* binv, const double* v, double* w, int m,
                  Mode mode);

// y[c] = sum_r cb[r] * binv[r, c], accumulated in ascending r.
void dense_matvec_t(const double* binv, const double* cb, double* y, int m,
                    Mode mode);

// Gauss-Jordan elimination step of the product-form update: with w already
// equal to binv * a_q, divides pivot row rp by w[rp] and subtracts w[r]
// times the new pivot row from every other row.
void rank1_update(double* binv, const double* w, int rp, int m, Mode mode);

struct SparseColView {
  const int* row;
  const double* val;
  int nnz;
};

// d[j] = c[j] - dot(y, col_j) for all n columns.
void price_columns(const SparseColView* cols, const double* c, const double* y,
                   double* d, int n, Mode mode);

// Row of the tableau: alpha[j] = dot(rho, col_j) for all n columns.
void tableau_row(const SparseColView* cols, const double* rho, double* alpha,
                 int n, Mode mode);

bool parallel_available();
int max_threads();

}  // namespace vsn::kernels

#endif  // VSN_SOLVER_KERNELS_HPP
