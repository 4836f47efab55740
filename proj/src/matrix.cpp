/* Copyright (C) 2026 The cyclored authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#include "cyclored/matrix.hpp"

#include <algorithm>

#include "cyclored/errors.hpp"

namespace cyclored {

ColMat identity_cols(size_t dim) {
  ColMat m(dim, Col(dim, Int(0)));
  for (size_t i = 0; i < dim; ++i) m[i][i] = 1;
  return m;
}

/* Column echelon by integer column operations.  Rows are cleared top to
 * bottom; at row r all working columns already vanish on rows < r, a
 * Euclidean exchange leaves a single column with nonzero (positive)
 * entry at r which becomes the pivot for that row. */
static ColMat echelon(ColMat work, size_t dim) {
  ColMat pivots;
  std::vector<size_t> pivot_rows;
  for (size_t r = 0; r < dim; ++r) {
    // Euclid until at most one column is nonzero at row r.
    while (true) {
      size_t best = work.size();
      for (size_t j = 0; j < work.size(); ++j) {
        if (work[j][r] == 0) continue;
        if (best == work.size() ||
            cmp(abs(work[j][r]), abs(work[best][r])) < 0)
          best = j;
      }
      if (best == work.size()) break;
      bool others = false;
      for (size_t j = 0; j < work.size(); ++j) {
        if (j == best || work[j][r] == 0) continue;
        others = true;
        Int q = work[j][r] / work[best][r];  // truncated; |rem| < |pivot|
        if (q != 0)
          for (size_t i = r; i < dim; ++i) work[j][i] -= q * work[best][i];
        // one Euclid step may leave a remainder; next loop pass shrinks it
      }
      if (!others) {
        if (work[best][r] < 0)
          for (Int& v : work[best]) v = -v;
        pivots.push_back(std::move(work[best]));
        pivot_rows.push_back(r);
        work.erase(work.begin() + static_cast<long>(best));
        break;
      }
    }
  }
  // Reduce entries below each pivot against later pivots.
  for (size_t j = 0; j < pivots.size(); ++j) {
    for (size_t k = j + 1; k < pivots.size(); ++k) {
      size_t r = pivot_rows[k];
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), pivots[j][r].get_mpz_t(),
                 pivots[k][r].get_mpz_t());
      if (q != 0)
        for (size_t i = r; i < pivots[j].size(); ++i)
          pivots[j][i] -= q * pivots[k][i];
    }
  }
  return pivots;
}

ColMat hnf(const ColMat& cols, size_t dim) {
  ColMat work;
  for (const Col& c : cols) {
    if (c.size() != dim) throw input_error("hnf: column length mismatch");
    bool zero = std::all_of(c.begin(), c.end(),
                            [](const Int& v) { return v == 0; });
    if (!zero) work.push_back(c);
  }
  return echelon(std::move(work), dim);
}

ColMat hnf_extend(const ColMat& base, const ColMat& extra, size_t dim) {
  ColMat work = base;
  work.insert(work.end(), extra.begin(), extra.end());
  return hnf(work, dim);
}

ColMat kernel(const ColMat& cols, size_t dim) {
  size_t k = cols.size();
  // Stack an identity block under A; column ops on the stack track the
  // combination that produced each echelon column.
  ColMat stacked(k, Col(dim + k, Int(0)));
  for (size_t j = 0; j < k; ++j) {
    if (cols[j].size() != dim) throw input_error("kernel: length mismatch");
    for (size_t i = 0; i < dim; ++i) stacked[j][i] = cols[j][i];
    stacked[j][dim + j] = 1;
  }
  ColMat ech = echelon(std::move(stacked), dim + k);
  ColMat ker;
  for (const Col& c : ech) {
    bool top_zero = true;
    for (size_t i = 0; i < dim; ++i)
      if (c[i] != 0) { top_zero = false; break; }
    if (!top_zero) continue;
    Col v(c.begin() + static_cast<long>(dim), c.end());
    ker.push_back(std::move(v));
  }
  return ker;
}

std::optional<Col> solve_hnf(const ColMat& H, const Col& v) {
  size_t d = H.size();
  if (d == 0 || v.size() != d)
    throw input_error("solve_hnf: dimension mismatch");
  Col x(d, Int(0));
  for (size_t i = 0; i < d; ++i) {
    Int num = v[i];
    for (size_t j = 0; j < i; ++j) num -= H[j][i] * x[j];
    if (H[i][i] == 0) return std::nullopt;
    Int q = num / H[i][i];
    if (q * H[i][i] != num) return std::nullopt;
    x[i] = q;
  }
  return x;
}

bool hnf_equal(const ColMat& a, const ColMat& b) { return a == b; }

Int det_cols(const ColMat& cols) {
  size_t n = cols.size();
  for (const Col& c : cols)
    if (c.size() != n) throw input_error("det_cols: matrix not square");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination on a row-major copy.
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = num / prev;  // Bareiss: division is exact
      }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Col mat_vec(const ColMat& cols, const Col& x) {
  if (cols.empty()) throw input_error("mat_vec: empty matrix");
  Col r(cols[0].size(), Int(0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < r.size(); ++i) r[i] += cols[j][i] * x[j];
  return r;
}

} // namespace cyclored
