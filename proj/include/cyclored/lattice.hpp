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
#ifndef CYCLORED_LATTICE_HPP
#define CYCLORED_LATTICE_HPP

#include "cyclored/intmath.hpp"
#include "cyclored/matrix.hpp"

namespace cyclored {

inline constexpr size_t kDefaultEnumDimCap = 40;

/* A lattice given by its exact Gram matrix (symmetric positive
 * definite, integer entries).  All squared lengths below are exact. */
struct GramLattice {
  ColMat gram;

  explicit GramLattice(ColMat g);   // validates symmetry + definiteness
  size_t dim() const { return gram.size(); }
};

struct SvpResult {
  Col coeffs;        // nonzero coordinates in the caller's basis
  Int sq_length;     // = coeffs^T * gram * coeffs
};

struct LllResult {
  GramLattice reduced;
  ColMat transform;  // unimodular; reduced = T^t * gram * T
};

Int quad_form(const ColMat& gram, const Col& x);

// delta = 99/100 LLL on the Gram matrix, exact integer arithmetic
// throughout (fraction-free Gram-Schmidt bookkeeping).
LllResult lll_reduce(const GramLattice& g);

/* Exact shortest nonzero vector by Schnorr-Euchner enumeration over the
 * exact rational Cholesky of the LLL-reduced form.  Ties are broken by
 * the lexicographically smallest coefficient vector whose leading
 * (first nonzero) coefficient is positive.  Throws resource_error above
 * the dimension cap. */
SvpResult svp_enumerate(const GramLattice& g,
                        size_t dim_cap = kDefaultEnumDimCap);

Int lattice_det(const GramLattice& g);

// Exact Hermite bound test: sq_length <= gamma^2 * det(gram)^(1/d),
// decided by cross-multiplied integer comparison.
bool hermite_check(const SvpResult& v, const GramLattice& g,
                   const Rat& gamma);

} // namespace cyclored

#endif
