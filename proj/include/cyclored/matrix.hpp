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
#ifndef CYCLORED_MATRIX_HPP
#define CYCLORED_MATRIX_HPP

#include <optional>
#include <vector>

#include "cyclored/intmath.hpp"

namespace cyclored {

/* Integer lattices are handled as lists of column vectors.  The
 * canonical basis form used throughout is the column-style Hermite
 * normal form: lower-triangular, positive diagonal, and every entry
 * below the diagonal reduced into [0, diagonal).  Two sublattices of
 * Z^d are equal iff their HNF bases are identical. */

using Col = std::vector<Int>;
using ColMat = std::vector<Col>;

ColMat identity_cols(size_t dim);

// HNF basis of the lattice spanned by the given columns (each of length
// dim).  Returns one column per pivot row; full-rank input yields a
// dim x dim lower-triangular matrix.
ColMat hnf(const ColMat& cols, size_t dim);

// HNF of an existing HNF basis extended by extra generators.
ColMat hnf_extend(const ColMat& base, const ColMat& extra, size_t dim);

// Basis of the integer kernel { x : A x = 0 } of the dim x k matrix
// whose columns are `cols`.  The result columns live in Z^k.
ColMat kernel(const ColMat& cols, size_t dim);

// Coordinates of v in the (full-rank, lower-triangular) HNF basis H, or
// nullopt if v is not in the lattice.
std::optional<Col> solve_hnf(const ColMat& H, const Col& v);

bool hnf_equal(const ColMat& a, const ColMat& b);

// Determinant of a square column matrix (Bareiss, exact).
Int det_cols(const ColMat& cols);

Col mat_vec(const ColMat& cols, const Col& x);   // sum x_j * col_j

} // namespace cyclored

#endif
