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
#ifndef CYCLORED_IDEAL_HPP
#define CYCLORED_IDEAL_HPP

#include <optional>
#include <utility>

#include "cyclored/cyclo.hpp"

namespace cyclored {

/* An integral ideal of Z[zeta_N] as a full-rank sublattice of the power
 * basis, kept in canonical column HNF.  Closure under multiplication by
 * zeta is what distinguishes an ideal from a mere sublattice, and is
 * verified on construction. */
struct IdealLattice {
  FieldPtr field;
  ColMat basis;                                      // column HNF
  std::optional<std::pair<u64, FpPoly>> generators;  // (rho, f) if known
};

struct SplittingData {
  u64 rho;
  u64 e;   // ramification index
  u64 f;   // inertia degree
  u64 g;   // number of distinct primes above rho
};

// Multiply an integer coordinate vector by zeta (one reduction row).
Col col_mul_zeta(const CycloField& F, const Col& v);

IdealLattice whole_ring(const FieldPtr& field);
IdealLattice principal_ideal(const CycloElt& a);

// HNF of arbitrary integral generators (each generator spans a cyclic
// Z[zeta]-module, so its zeta-shifts are included automatically).
IdealLattice ideal_from_generators(const FieldPtr& field,
                                   const std::vector<Col>& gens);

// The prime ideal <rho, f(zeta)> for an irreducible factor f of
// Phi_N mod rho.
IdealLattice prime_ideal(const FieldPtr& field, u64 rho, const FpPoly& f);

// Validate and wrap an externally supplied HNF basis.
IdealLattice ideal_from_hnf(const FieldPtr& field, ColMat basis);

Int absolute_norm(const IdealLattice& I);

IdealLattice ideal_mul(const IdealLattice& I, const IdealLattice& J);

SplittingData splitting_data(const FieldPtr& field, u64 rho);

// c = I intersect O_K for the sublevel-j subfield K, in K's power
// basis.  Computed coordinate-wise: K's basis is the set of power-basis
// exponents divisible by q^(n-j).
IdealLattice intersect_subring(const IdealLattice& I, u64 j);

// True iff the zeta-shifts { zeta^k c : 0 <= k < q^(n-j) } tile I, i.e.
// the stacked shifts have HNF exactly equal to I's basis.
bool direct_sum_check(const IdealLattice& I, const IdealLattice& c, u64 j);

} // namespace cyclored

#endif
