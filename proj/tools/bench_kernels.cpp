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
//
// Times the serial reference kernels against the OpenMP variants on sizes
// around what the allocation models produce, and verifies bit equality.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "solver/kernels.hpp"

namespace {

using vsn::kernels::Mode;
using vsn::kernels::SparseColView;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct SparseCols {
  std::vector<std::vector<int>> row;
  std::vector<std::vector<double>> val;
  std::vector<SparseColView> view;
};

SparseCols random_columns(int n, int m, int nnz_per_col, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_row(0, m - 1);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  SparseCols cols;
  cols.row.resize(n);
  cols.val.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < nnz_per_col; ++t) {
      cols.row[j].push_back(pick_row(rng));
      cols.val[j].push_back(coef(rng));
    }
    cols.view.push_back({cols.row[j].data(), cols.val[j].data(),
                         static_cast<int>(cols.row[j].size())});
  }
  return cols;
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_s();
    fn();
    best = std::min(best, now_s() - t0);
  }
  return best;
}

bool bytes_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main() {
  std::printf("threads available: %d (parallel %s)\n",
              vsn::kernels::max_threads(),
              vsn::kernels::parallel_available() ? "on" : "off");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int reps = 5;
  bool all_equal = true;

  for (int m : {200, 600, 1200}) {
    std::vector<double> binv(static_cast<std::size_t>(m) * m);
    std::vector<double> v(m), cb(m);
    for (double& x : binv) x = coef(rng);
    for (double& x : v) x = coef(rng);
    for (double& x : cb) x = coef(rng);
    std::vector<double> ws(m), wp(m), ys(m), yp(m);

    double ts = time_best_of(reps, [&] {
      vsn::kernels::dense_matvec(binv.data(), v.data(), ws.data(), m,
                                 Mode::kSerial);
    });
    double tp = time_best_of(reps, [&] {
      vsn::kernels::dense_matvec(binv.data(), v.data(), wp.data(), m,
                                 Mode::kParallel);
    });
    all_equal = all_equal && bytes_equal(ws, wp);
    std::printf("dense_matvec    m=%5d  serial %8.1f us  parallel %8.1f us  "
                "speedup %.2fx\n",
                m, ts * 1e6, tp * 1e6, ts / tp);

    ts = time_best_of(reps, [&] {
      vsn::kernels::dense_matvec_t(binv.data(), cb.data(), ys.data(), m,
                                   Mode::kSerial);
    });
    tp = time_best_of(reps, [&] {
      vsn::kernels::dense_matvec_t(binv.data(), cb.data(), yp.data(), m,
                                   Mode::kParallel);
    });
    all_equal = all_equal && bytes_equal(ys, yp);
    std::printf("dense_matvec_t  m=%5d  serial %8.1f us  parallel %8.1f us  "
                "speedup %.2fx\n",
                m, ts * 1e6, tp * 1e6, ts / tp);

    std::vector<double> upds = binv, updp = binv;
    std::vector<double> w(m);
    for (double& x : w) x = coef(rng);
    int rp = m / 2;
    if (std::fabs(w[rp]) < 0.5) w[rp] = 1.0;
    ts = time_best_of(reps, [&] {
      upds = binv;
      vsn::kernels::rank1_update(upds.data(), w.data(), rp, m, Mode::kSerial);
    });
    tp = time_best_of(reps, [&] {
      updp = binv;
      vsn::kernels::rank1_update(updp.data(), w.data(), rp, m,
                                 Mode::kParallel);
    });
    all_equal = all_equal && bytes_equal(upds, updp);
    std::printf("rank1_update    m=%5d  serial %8.1f us  parallel %8.1f us  "
                "speedup %.2fx\n",
                m, ts * 1e6, tp * 1e6, ts / tp);
  }

  for (int n : {2000, 10000}) {
    const int m = 800;
    SparseCols cols = random_columns(n, m, 8, rng);
    std::vector<double> c(n), y(m), rho(m);
    for (double& x : c) x = coef(rng);
    for (double& x : y) x = coef(rng);
    for (double& x : rho) x = coef(rng);
    std::vector<double> ds(n), dp(n), as(n), ap(n);

    double ts = time_best_of(reps, [&] {
      vsn::kernels::price_columns(cols.view.data(), c.data(), y.data(),
                                  ds.data(), n, Mode::kSerial);
    });
    double tp = time_best_of(reps, [&] {
      vsn::kernels::price_columns(cols.view.data(), c.data(), y.data(),
                                  dp.data(), n, Mode::kParallel);
    });
    all_equal = all_equal && bytes_equal(ds, dp);
    std::printf("price_columns   n=%5d  serial %8.1f us  parallel %8.1f us  "
                "speedup %.2fx\n",
                n, ts * 1e6, tp * 1e6, ts / tp);

    ts = time_best_of(reps, [&] {
      vsn::kernels::tableau_row(cols.view.data(), rho.data(), as.data(), n,
                                Mode::kSerial);
    });
    tp = time_best_of(reps, [&] {
      vsn::kernels::tableau_row(cols.view.data(), rho.data(), ap.data(), n,
                                Mode::kParallel);
    });
    all_equal = all_equal && bytes_equal(as, ap);
    std::printf("tableau_row     n=%5d  serial %8.1f us  parallel %8.1f us  "
                "speedup %.2fx\n",
                n, ts * 1e6, tp * 1e6, ts / tp);
  }

  std::printf("serial/parallel results bitwise identical: %s\n",
              all_equal ? "yes" : "NO");
  return all_equal ? 0 : 1;
}
