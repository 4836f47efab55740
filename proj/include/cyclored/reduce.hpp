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
#ifndef CYCLORED_REDUCE_HPP
#define CYCLORED_REDUCE_HPP

#include <string>

#include "cyclored/ideal.hpp"
#include "cyclored/lattice.hpp"

namespace cyclored {

/* Which sublevel the SVP instance for a prime rho can be pushed down
 * to.  r is chosen by the order criterion: the least sublevel whose
 * conductor already sees the full q-part of ord_N(rho),
 *     ord_N(rho) = ord_{s q^(r+1)}(rho) * q^(n-r),
 * because that is exactly what keeps the factor degrees consistent
 * between the level and the top.  The valuation shortcut
 * min(A - 1, n), with rho^phi(s) = m q^A + a, is computed alongside for
 * reporting; the two do not always agree and the order criterion is
 * authoritative (the basis check downstream would catch either). */
struct ReductionPlan {
  u64 rho = 0;
  FieldPtr field;
  u64 r = 0;                 // sublevel, order-based
  u64 subfield_conductor = 0;
  u64 reduced_dim = 0;       // phi(subfield_conductor)
  u64 A_val = 0;           // valuation A of rho^phi(s) - a
  Int m_val;               // cofactor m
  u64 a_val = 0;           // residue a = rho^phi(s) mod q
  std::string method_note;
};

ReductionPlan subfield_level(const FieldPtr& field, u64 rho);

/* SVP answer for an ideal of L, found at some sublevel r_used and
 * lifted back up (the lift is the identity on elements: the minimizer
 * already lies in the subfield copy inside L). */
struct IdealSvpResult {
  Col element;           // power-basis coordinates in L
  Int sq_length;         // Trace(x * conj(x)) in L
  u64 r_used = 0;
  size_t dim_enumerated = 0;
};

IdealSvpResult prime_ideal_svp(const IdealLattice& p,
                               size_t dim_cap = kDefaultEnumDimCap);

// No factorization needed: walk the sublevels bottom-up, keep the first
// one whose zeta-shifts of I ∩ O_K tile I, else enumerate I directly.
IdealSvpResult general_ideal_svp(const IdealLattice& I,
                                 size_t dim_cap = kDefaultEnumDimCap);

enum class SpecialClass { EASY_S2, EASY_SP, NOT_SPECIAL };

struct SpecialPrimeReport {
  SpecialClass cls = SpecialClass::NOT_SPECIAL;
  u64 reduced_dim = 0;   // 0 when not special
};

// Mechanical membership test for the instantly-easy prime families:
// q = 2 with rho^phi(s) = 3 mod 4, or odd q with the q-valuation of
// rho^phi(s) - a exactly 1.
SpecialPrimeReport special_prime_class(u64 rho, const FieldPtr& field);

// One entry per prime factor of I (repeats allowed): the rational prime
// and its inertia degrees in L and in the sublevel-r subfield K.
struct PrimeInertia {
  u64 p;
  u64 f_L;
  u64 f_K;
};

/* Hermite factor carried through the reduction:
 *   out = in * sqrt(D/r) * Norm(I)^(1/r - 1/D)
 *            / ( |Norm_K(disc(L/K))|^(1/2D) * prod_i p_i^((fL_i - fK_i)/r) )
 * with D = [L:Q], r = [K:Q].  out^(2D) has integer exponents
 * throughout, so it is held as an exact rational; the reported real
 * value is a verified enclosure [out_lo, out_hi]. */
struct HermiteLift {
  Rat gamma_in;
  u64 deg_L = 0, deg_K = 0;
  Rat out_pow;           // gamma_out^(2D), exact
  Rat simplified_pow;    // (gamma_in * sqrt(D/r) * Norm(I)^(1/r-1/D))^(2D)
  double out_lo = 0, out_hi = 0;
  double sqrt_term = 0, disc_term = 0, norm_term = 0, prime_term = 0;
  bool collapsed = false; // p-power terms cancel against the norm term
};

HermiteLift hermite_lift_factor(const IdealLattice& I,
                                const ReductionPlan& plan, const Rat& gamma,
                                const std::vector<PrimeInertia>& split);

// Exact Hermite-SVP test of sq_length against gamma_out and the
// squared-volume determinant: sq^D * den <= num * det where
// num/den = out_pow.
bool hermite_lift_satisfies(const HermiteLift& h, const Int& sq_length,
                            const Int& gram_det);

} // namespace cyclored

#endif
