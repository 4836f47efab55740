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
#ifndef CYCLORED_CYCLO_HPP
#define CYCLORED_CYCLO_HPP

#include <memory>
#include <vector>

#include "cyclored/ffpoly.hpp"
#include "cyclored/intmath.hpp"
#include "cyclored/matrix.hpp"

namespace cyclored {

/* The cyclotomic field L = Q(zeta_N) in the power basis
 * {1, zeta, ..., zeta^(phi(N)-1)} with the conductor split as
 * N = s * q_base^(n+1), gcd(s, q_base) = 1.  The subfield tower used by
 * the reduction is indexed by sublevels 0 <= j <= n:
 *   K_j = Q(zeta^(q_base^(n-j))), conductor s * q_base^(j+1),
 * so K_n = L and smaller j means a smaller field. */
class CycloField {
public:
  u64 N, s, q_base, n;
  u64 degree;                              // phi(N)
  IntPoly phi_poly;                        // Phi_N
  // reduction_table[k - degree] = x^(degree+k') mod Phi_N,
  // 0 <= k - degree <= degree - 2 (enough to reduce a product)
  std::vector<std::vector<Int>> reduction_table;
  // zeta_pow[e] = power-basis coordinates of zeta^e, 0 <= e < N
  std::vector<std::vector<Int>> zeta_pow;
  // trace_zeta[j] = Trace(zeta^j) for 0 <= j < degree (Moebius formula)
  std::vector<Int> trace_zeta;

  static std::shared_ptr<const CycloField> make(u64 N);
  static std::shared_ptr<const CycloField> make(u64 N, u64 q_base);

  u64 sublevel_conductor(u64 j) const;     // s * q_base^(j+1)
  std::shared_ptr<const CycloField> sublevel_field(u64 j) const;
  // [L : K_j] = q_base^(n-j)
  u64 sublevel_index(u64 j) const;

private:
  CycloField() = default;
};

using FieldPtr = std::shared_ptr<const CycloField>;

struct CycloElt {
  FieldPtr field;
  std::vector<Rat> coeffs;                 // length phi(N)

  CycloElt() = default;
  CycloElt(FieldPtr F, std::vector<Rat> c);

  bool is_zero() const;
  bool is_integral() const;
  bool operator==(const CycloElt& o) const;
};

CycloElt elt_zero(const FieldPtr& F);
CycloElt elt_rational(const FieldPtr& F, const Rat& r);
CycloElt elt_zeta_pow(const FieldPtr& F, u64 e);       // zeta^e, any e
CycloElt elt_from_col(const FieldPtr& F, const Col& v);
Col elt_to_col(const CycloElt& a);                     // requires integral

CycloElt elt_add(const CycloElt& a, const CycloElt& b);
CycloElt elt_sub(const CycloElt& a, const CycloElt& b);
CycloElt elt_neg(const CycloElt& a);
CycloElt elt_scale(const Rat& r, const CycloElt& a);
CycloElt elt_mul(const CycloElt& a, const CycloElt& b);
CycloElt elt_inv(const CycloElt& a);                   // throws on zero

struct Automorphism {
  FieldPtr field;
  u64 index;                               // in [1, N), coprime to N

  Automorphism(FieldPtr F, u64 i);
};

Automorphism compose(const Automorphism& a, const Automorphism& b);
CycloElt apply_automorphism(const Automorphism& s, const CycloElt& a);
CycloElt conjugate(const CycloElt& a);                 // sigma_{N-1}

Rat trace(const CycloElt& a);
Rat norm(const CycloElt& a);

// G[i][j] = Trace(e_i * conj(e_j)); exact integers, inputs must be
// integral (callers pre-scale rational vectors).
ColMat trace_gram(const std::vector<CycloElt>& elts);

Int discriminant(const CycloField& F);

// Trace from L down to the sublevel-j subfield: the sum of sigma_i(a)
// over all i = 1 mod s*q^(j+1).  The result lies in K_j.
CycloElt relative_trace(const CycloElt& a, u64 j);

// Coordinate maps along the tower: K_j's power basis element zeta_K^i
// is zeta^(i*q^(n-j)), and (phi(K_j)-1)*q^(n-j) < phi(N), so both maps
// are support relabelings with no reduction.
CycloElt embed_from_sublevel(const FieldPtr& L, u64 j, const CycloElt& aK);
CycloElt restrict_to_sublevel(const FieldPtr& L, u64 j, const CycloElt& aL);

} // namespace cyclored

#endif
