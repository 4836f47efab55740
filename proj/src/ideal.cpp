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
#include "cyclored/ideal.hpp"
#include "cyclored/errors.hpp"

#include <algorithm>

namespace cyclored {

Col col_mul_zeta(const CycloField& F, const Col& v)
{
  size_t d = F.degree;
  Col out(d, Int(0));
  for (size_t i = 0; i + 1 < d; i++) out[i + 1] = v[i];
  const Int& top = v[d - 1];
  if (top != 0) {
    const std::vector<Int>& row = F.reduction_table[0]; // x^d mod Phi_N
    for (size_t i = 0; i < d; i++) out[i] += top * row[i];
  }
  return out;
}

namespace {

void require_same_field(const IdealLattice& I, const IdealLattice& J)
{
  if (I.field->N != J.field->N || I.field->q_base != J.field->q_base)
    throw input_error("ideal operands live in different fields");
}

// An HNF sublattice is an ideal iff zeta * b stays inside for every
// basis vector b.
void check_ideal_closure(const CycloField& F, const ColMat& basis)
{
  for (const Col& b : basis)
    if (!solve_hnf(basis, col_mul_zeta(F, b)))
      throw input_error("lattice is not closed under multiplication "
                        "by zeta");
}

IdealLattice wrap(FieldPtr field, ColMat basis,
                  std::optional<std::pair<u64, FpPoly>> gens)
{
  if (basis.size() != field->degree)
    throw invariant_error("ideal basis is not full rank");
  check_ideal_closure(*field, basis);
  IdealLattice I;
  I.field = std::move(field);
  I.basis = std::move(basis);
  I.generators = std::move(gens);
  return I;
}

} // namespace

IdealLattice whole_ring(const FieldPtr& field)
{
  IdealLattice I;
  I.field = field;
  I.basis = identity_cols(field->degree);
  return I;
}

IdealLattice ideal_from_generators(const FieldPtr& field,
                                   const std::vector<Col>& gens)
{
  size_t d = field->degree;
  ColMat cols;
  cols.reserve(gens.size() * d);
  for (const Col& g : gens) {
    if (g.size() != d) throw input_error("generator has wrong length");
    Col cur = g;
    for (size_t k = 0; k < d; k++) {
      cols.push_back(cur);
      if (k + 1 < d) cur = col_mul_zeta(*field, cur);
    }
  }
  return wrap(field, hnf(cols, d), std::nullopt);
}

IdealLattice principal_ideal(const CycloElt& a)
{
  if (a.is_zero()) throw input_error("principal ideal of zero");
  return ideal_from_generators(a.field, {elt_to_col(a)});
}

IdealLattice prime_ideal(const FieldPtr& field, u64 rho, const FpPoly& f)
{
  if (!is_prime_u64(rho)) throw input_error("rho is not prime");
  if (field->N % rho == 0)
    throw input_error("ramified prime (rho | N)");
  FpPoly phi = fp_from_int(field->phi_poly, rho);
  FpPoly g = fp_make_monic(f);
  if (fp_rem(phi, g).degree() >= 0)
    throw input_error("f does not divide Phi_N mod rho");
  if (!is_irreducible(g))
    throw input_error("f is not irreducible mod rho");

  size_t d = field->degree;
  Col fz(d, Int(0));
  for (size_t i = 0; i < g.c.size() && i < d; i++) fz[i] = Int(g.c[i]);
  // deg f <= phi(N) always holds; equality means f = Phi_N mod rho and
  // the second generator is zero in O_L / rho O_L.
  if (g.c.size() == d + 1) fz.assign(d, Int(0));

  ColMat cols;
  cols.reserve(2 * d);
  for (size_t i = 0; i < d; i++) {
    Col e(d, Int(0));
    e[i] = rho;
    cols.push_back(std::move(e));
  }
  Col cur = fz;
  for (size_t i = 0; i < d; i++) {
    cols.push_back(cur);
    if (i + 1 < d) cur = col_mul_zeta(*field, cur);
  }
  IdealLattice I = wrap(field, hnf(cols, d),
                        std::make_pair(rho, g));
  if (absolute_norm(I) != int_pow(Int(rho), (u64)g.degree()))
    throw invariant_error("prime ideal norm != rho^deg(f)");
  return I;
}

IdealLattice ideal_from_hnf(const FieldPtr& field, ColMat basis)
{
  size_t d = field->degree;
  if (basis.size() != d) throw input_error("HNF basis is not full rank");
  for (const Col& c : basis)
    if (c.size() != d) throw input_error("HNF column has wrong length");
  if (!hnf_equal(hnf(basis, d), basis))
    throw input_error("basis is not in canonical HNF");
  return wrap(field, std::move(basis), std::nullopt);
}

Int absolute_norm(const IdealLattice& I)
{
  Int prod = 1;
  for (size_t i = 0; i < I.basis.size(); i++) prod *= I.basis[i][i];
  return prod;
}

IdealLattice ideal_mul(const IdealLattice& I, const IdealLattice& J)
{
  require_same_field(I, J);
  const CycloField& F = *I.field;
  size_t d = F.degree;

  // phi(N)^2 pairwise products, HNF-reduced in blocks to cap memory.
  ColMat acc;
  ColMat block;
  const size_t block_cap = 4 * d;
  for (const Col& a : I.basis) {
    CycloElt ea = elt_from_col(I.field, a);
    for (const Col& b : J.basis) {
      block.push_back(elt_to_col(elt_mul(ea, elt_from_col(I.field, b))));
      if (block.size() >= block_cap) {
        acc = acc.empty() ? hnf(block, d) : hnf_extend(acc, block, d);
        block.clear();
      }
    }
  }
  if (!block.empty())
    acc = acc.empty() ? hnf(block, d) : hnf_extend(acc, block, d);
  return wrap(I.field, std::move(acc), std::nullopt);
}

SplittingData splitting_data(const FieldPtr& field, u64 rho)
{
  if (!is_prime_u64(rho)) throw input_error("rho is not prime");
  SplittingData sd;
  sd.rho = rho;
  u64 N = field->N;
  if (N % rho != 0) {
    sd.e = 1;
    sd.f = multiplicative_order(rho, N);
    sd.g = field->degree / sd.f;
  } else {
    u64 w = N;
    u64 pv = 1;
    while (w % rho == 0) {
      w /= rho;
      pv *= rho;
    }
    sd.e = euler_phi_u64(pv);
    sd.f = w == 1 ? 1 : multiplicative_order(rho, w);
    sd.g = euler_phi_u64(w) / sd.f;
  }
  if (sd.e * sd.f * sd.g != field->degree)
    throw invariant_error("efg != phi(N)");
  return sd;
}

IdealLattice intersect_subring(const IdealLattice& I, u64 j)
{
  const CycloField& F = *I.field;
  if (j > F.n) throw input_error("invalid sublevel");
  FieldPtr K = F.sublevel_field(j);
  u64 t = F.sublevel_index(j);             // q^(n-j)
  size_t dL = F.degree, dK = K->degree;
  if ((dK - 1) * t >= dL)
    throw invariant_error("subfield power basis escapes the power basis");

  // Rows with exponent not divisible by t must vanish on the
  // intersection; its coordinates are read off the remaining rows.
  std::vector<size_t> out_rows;
  for (size_t r = 0; r < dL; r++)
    if (r % t != 0) out_rows.push_back(r);

  ColMat restricted;
  restricted.reserve(dL);
  for (const Col& b : I.basis) {
    Col v(out_rows.size());
    for (size_t r = 0; r < out_rows.size(); r++) v[r] = b[out_rows[r]];
    restricted.push_back(std::move(v));
  }
  ColMat ker = kernel(restricted, out_rows.size());
  if (ker.size() != dK)
    throw invariant_error("subring intersection has wrong rank");

  ColMat sub;
  sub.reserve(dK);
  for (const Col& x : ker) {
    Col full = mat_vec(I.basis, x);
    Col v(dK);
    for (size_t i = 0; i < dK; i++) v[i] = full[i * t];
    sub.push_back(std::move(v));
  }
  return wrap(K, hnf(sub, dK), std::nullopt);
}

bool direct_sum_check(const IdealLattice& I, const IdealLattice& c, u64 j)
{
  const CycloField& F = *I.field;
  if (j > F.n) throw input_error("invalid sublevel");
  if (c.field->N != F.sublevel_conductor(j) ||
      c.field->q_base != F.q_base)
    throw input_error("subfield ideal does not match the sublevel");
  u64 t = F.sublevel_index(j);
  size_t dL = F.degree, dK = c.field->degree;

  // Embedded exponents i*t + k stay below phi(N) for k < t, so the
  // zeta^k-shifts are plain coordinate moves with no reduction.
  ColMat shifts;
  shifts.reserve(dK * t);
  for (const Col& b : c.basis)
    for (u64 k = 0; k < t; k++) {
      Col v(dL, Int(0));
      for (size_t i = 0; i < dK; i++) v[i * t + k] = b[i];
      shifts.push_back(std::move(v));
    }
  return hnf_equal(hnf(shifts, dL), I.basis);
}

} // namespace cyclored
