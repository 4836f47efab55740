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
#include "cyclored/modlat.hpp"
#include "cyclored/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cyclored {

namespace {

void check_shapes(const PseudoBasisModule& M)
{
  if (!M.field) throw input_error("module has no field");
  if (M.rank == 0 || M.entries.size() != M.rank)
    throw input_error("module rank does not match its entry count");
  if (M.rank > M.ambient)
    throw input_error("module rank exceeds the ambient dimension");
  for (const PseudoBasisEntry& e : M.entries) {
    if (e.ideal.field->N != M.field->N ||
        e.ideal.field->q_base != M.field->q_base)
      throw input_error("entry ideal lives in a different field");
    if (e.b.size() != M.ambient)
      throw input_error("entry vector has wrong length");
    for (const CycloElt& x : e.b)
      if (x.field->N != M.field->N)
        throw input_error("entry coordinate lives in a different field");
  }
}

// Gaussian elimination determinant over the field L; exact.
CycloElt det_over_L(std::vector<std::vector<CycloElt>> W, const FieldPtr& F)
{
  size_t d = W.size();
  CycloElt det = elt_rational(F, 1);
  for (size_t i = 0; i < d; i++) {
    size_t piv = i;
    while (piv < d && W[piv][i].is_zero()) piv++;
    if (piv == d) return elt_zero(F);
    if (piv != i) {
      std::swap(W[piv], W[i]);
      det = elt_neg(det);
    }
    det = elt_mul(det, W[i][i]);
    CycloElt inv = elt_inv(W[i][i]);
    for (size_t j = i + 1; j < d; j++) {
      if (W[j][i].is_zero()) continue;
      CycloElt f = elt_mul(W[j][i], inv);
      for (size_t c = i; c < d; c++)
        W[j][c] = elt_sub(W[j][c], elt_mul(f, W[i][c]));
    }
  }
  return det;
}

// W[k][l] = sum_t conj(b_k[t]) * b_l[t]; the d x d Gram of B over L.
std::vector<std::vector<CycloElt>>
gram_over_L(const std::vector<const std::vector<CycloElt>*>& rows,
            const FieldPtr& F, size_t D)
{
  size_t d = rows.size();
  std::vector<std::vector<CycloElt>> W(d, std::vector<CycloElt>(d));
  for (size_t k = 0; k < d; k++)
    for (size_t l = 0; l < d; l++) {
      CycloElt acc = elt_zero(F);
      for (size_t t = 0; t < D; t++)
        acc = elt_add(acc, elt_mul(conjugate((*rows[k])[t]), (*rows[l])[t]));
      W[k][l] = acc;
    }
  return W;
}

} // namespace

PseudoBasisModule make_module(FieldPtr field,
                              std::vector<PseudoBasisEntry> entries,
                              size_t ambient)
{
  PseudoBasisModule M;
  M.field = std::move(field);
  M.rank = entries.size();
  M.ambient = ambient;
  M.entries = std::move(entries);
  check_shapes(M);
  std::vector<const std::vector<CycloElt>*> rows;
  for (const PseudoBasisEntry& e : M.entries) rows.push_back(&e.b);
  CycloElt det = det_over_L(gram_over_L(rows, M.field, M.ambient), M.field);
  if (det.is_zero())
    throw input_error("pseudo-basis vectors are linearly dependent over L");
  return M;
}

Rat module_volume(const PseudoBasisModule& M)
{
  check_shapes(M);
  std::vector<const std::vector<CycloElt>*> rows;
  for (const PseudoBasisEntry& e : M.entries) rows.push_back(&e.b);
  CycloElt det = det_over_L(gram_over_L(rows, M.field, M.ambient), M.field);
  if (det.is_zero()) throw input_error("rank-deficient pseudo-basis");

  Rat vol = rat_pow(Rat(abs(discriminant(*M.field))), (long)M.rank);
  vol *= norm(det);
  for (const PseudoBasisEntry& e : M.entries) {
    Int nm = absolute_norm(e.ideal);
    vol *= Rat(nm * nm);
  }
  if (vol <= 0) throw invariant_error("module volume must be positive");
  return vol;
}

std::vector<u64> pseudo_ideal_stabilizer(const PseudoBasisEntry& entry)
{
  const FieldPtr& F = entry.ideal.field;
  size_t t0 = entry.b.size();
  for (size_t t = 0; t < entry.b.size(); t++)
    if (!entry.b[t].is_zero()) {
      t0 = t;
      break;
    }
  if (t0 == entry.b.size()) throw input_error("pseudo-ideal vector is zero");
  CycloElt pivot_inv = elt_inv(entry.b[t0]);

  std::vector<u64> stab;
  for (u64 i = 1; i < F->N; i++) {
    if (gcd_u64(i, F->N) != 1) continue;
    Automorphism s(F, i);
    CycloElt lambda = elt_mul(apply_automorphism(s, entry.b[t0]), pivot_inv);
    bool proportional = true;
    for (size_t t = 0; t < entry.b.size() && proportional; t++)
      if (!(apply_automorphism(s, entry.b[t]) ==
            elt_mul(lambda, entry.b[t])))
        proportional = false;
    if (!proportional) continue;

    // sigma(I) * lambda = I as lattices, compared after clearing the
    // common denominator (scaling preserves canonical HNF form).
    std::vector<CycloElt> imgs;
    Int delta = 1;
    for (const Col& col : entry.ideal.basis) {
      CycloElt w =
          elt_mul(lambda, apply_automorphism(s, elt_from_col(F, col)));
      for (const Rat& cf : w.coeffs)
        mpz_lcm(delta.get_mpz_t(), delta.get_mpz_t(),
                cf.get_den().get_mpz_t());
      imgs.push_back(std::move(w));
    }
    ColMat scaled;
    for (const CycloElt& w : imgs) {
      Col v(F->degree);
      for (size_t r = 0; r < F->degree; r++) {
        Rat x = w.coeffs[r] * delta;
        if (x.get_den() != 1)
          throw invariant_error("denominator clearing failed");
        v[r] = x.get_num();
      }
      scaled.push_back(std::move(v));
    }
    ColMat lhs = hnf(scaled, F->degree);
    ColMat rhs = entry.ideal.basis;
    for (Col& c : rhs)
      for (Int& x : c) x *= delta;
    if (hnf_equal(lhs, rhs)) stab.push_back(i);
  }
  return stab;
}

u64 stabilizer_sublevel(const CycloField& F, const std::vector<u64>& stab)
{
  for (u64 j = 0; j <= F.n; j++) {
    u64 cond = F.sublevel_conductor(j);
    bool inside = true;
    for (u64 u = 0; u < F.sublevel_index(j) && inside; u++) {
      u64 idx = (1 + (u64)((__uint128_t)u * cond % F.N)) % F.N;
      if (!std::binary_search(stab.begin(), stab.end(), idx)) inside = false;
    }
    if (inside) return j;
  }
  throw invariant_error("stabilizer misses the identity subgroup");
}

namespace {

ModuleEntryReduction separate_entry(const PseudoBasisModule& M, size_t k,
                                    std::vector<u64> stab, u64 jk)
{
  const FieldPtr& F = M.field;
  const PseudoBasisEntry& entry = M.entries[k];

  size_t t0 = 0;
  while (entry.b[t0].is_zero()) t0++;
  CycloElt pivot_inv = elt_inv(entry.b[t0]);
  std::vector<CycloElt> lambdas;
  for (u64 i : stab) {
    Automorphism s(F, i);
    lambdas.push_back(
        elt_mul(apply_automorphism(s, entry.b[t0]), pivot_inv));
  }

  // Retry ladder for the separating sum: the plain norm first, then
  // norm * (1 + zeta_{K_j}) for descending sublevels j <= jk.
  std::vector<CycloElt> attempts;
  CycloElt x0 = elt_rational(F, Rat(absolute_norm(entry.ideal)));
  attempts.push_back(x0);
  for (u64 j = jk + 1; j-- > 0;) {
    CycloElt unit = elt_add(elt_rational(F, 1),
                            elt_zeta_pow(F, F->sublevel_index(j)));
    attempts.push_back(elt_mul(x0, unit));
  }

  u64 step = F->sublevel_index(jk);
  CycloElt S = elt_zero(F);
  bool found = false;
  for (const CycloElt& x : attempts) {
    if (!x.is_integral() || !solve_hnf(entry.ideal.basis, elt_to_col(x)))
      throw invariant_error("retry candidate left the ideal");
    CycloElt sum = elt_zero(F);
    for (size_t a = 0; a < stab.size(); a++) {
      Automorphism s(F, stab[a]);
      CycloElt xs = elt_mul(apply_automorphism(s, x), lambdas[a]);
      if (!xs.is_integral() ||
          !solve_hnf(entry.ideal.basis, elt_to_col(xs)))
        throw invariant_error("separating coefficient left the ideal");
      sum = elt_add(sum, xs);
    }
    if (!sum.is_zero()) {
      S = sum;
      found = true;
      break;
    }
  }
  if (!found)
    throw resource_error("separation retry ladder exhausted");

  ModuleEntryReduction red;
  red.stabilizer = std::move(stab);
  red.sublevel = jk;
  red.alpha = elt_inv(S);
  for (const CycloElt& bt : entry.b) red.b_prime.push_back(elt_mul(S, bt));
  for (const CycloElt& bp : red.b_prime)
    for (size_t r = 0; r < F->degree; r++)
      if (r % step != 0 && bp.coeffs[r] != 0)
        throw invariant_error("separated vector escaped the sublevel");
  for (size_t t = 0; t < entry.b.size(); t++)
    if (!(elt_mul(red.alpha, red.b_prime[t]) == entry.b[t]))
      throw invariant_error("alpha * b' != b");

  std::vector<CycloElt> scaled;
  Int Q = 1;
  for (const Col& col : entry.ideal.basis) {
    CycloElt v = elt_mul(red.alpha, elt_from_col(F, col));
    for (const Rat& cf : v.coeffs)
      mpz_lcm(Q.get_mpz_t(), Q.get_mpz_t(), cf.get_den().get_mpz_t());
    scaled.push_back(std::move(v));
  }
  red.Q = Q;
  std::vector<Col> gens;
  for (const CycloElt& v : scaled) {
    Col c(F->degree);
    for (size_t r = 0; r < F->degree; r++) {
      Rat x = v.coeffs[r] * Q;
      if (x.get_den() != 1) throw invariant_error("Q cleared nothing");
      c[r] = x.get_num();
    }
    gens.push_back(std::move(c));
  }
  red.J = ideal_from_generators(F, gens);
  return red;
}

} // namespace

ModuleReduction module_reduce(const PseudoBasisModule& M)
{
  check_shapes(M);
  const FieldPtr& F = M.field;
  ModuleReduction red;
  red.field = F;

  u64 t = 0;
  for (size_t k = 0; k < M.rank; k++) {
    std::vector<u64> stab = pseudo_ideal_stabilizer(M.entries[k]);
    u64 jk = stabilizer_sublevel(*F, stab);
    t = std::max(t, jk);
    red.entries.push_back(separate_entry(M, k, std::move(stab), jk));
  }
  red.compositum = t;

  u64 T = t;
  for (ModuleEntryReduction& e : red.entries) {
    u64 rbar = F->n;
    for (u64 rb = 1; rb <= F->n; rb++) {
      if (direct_sum_check(e.J, intersect_subring(e.J, rb), rb)) {
        rbar = rb;
        break;
      }
    }
    if (F->n == 0) rbar = 0;
    e.rbar = rbar;
    e.c = intersect_subring(e.J, rbar);
    T = std::max(T, rbar);
  }
  red.common_level = T;
  red.degraded = (T == F->n);
  return red;
}

namespace {

// Z-generators of (+)_k (1/Q_k) c_k b'_k with c_k at the given levels.
std::vector<std::vector<CycloElt>>
sublattice_vectors(const PseudoBasisModule& M, const ModuleReduction& red,
                   const std::vector<const IdealLattice*>& cs)
{
  const FieldPtr& F = M.field;
  std::vector<std::vector<CycloElt>> vecs;
  for (size_t k = 0; k < M.rank; k++) {
    const ModuleEntryReduction& e = red.entries[k];
    const IdealLattice& ck = *cs[k];
    u64 lv_step = F->degree / ck.field->degree; // q^(n - level)
    for (const Col& col : ck.basis) {
      Col full(F->degree, Int(0));
      for (size_t i = 0; i < ck.field->degree; i++)
        full[i * lv_step] = col[i];
      CycloElt scal = elt_scale(Rat(1, e.Q), elt_from_col(F, full));
      std::vector<CycloElt> v;
      v.reserve(M.ambient);
      for (const CycloElt& bp : e.b_prime) v.push_back(elt_mul(scal, bp));
      vecs.push_back(std::move(v));
    }
  }
  return vecs;
}

// Exact trace Gram of module vectors with denominators cleared; the
// integer Gram is mu times the rational one.
std::pair<ColMat, Int>
module_gram(const std::vector<std::vector<CycloElt>>& vecs)
{
  size_t R = vecs.size();
  std::vector<std::vector<Rat>> P(R, std::vector<Rat>(R));
  Int mu = 1;
  for (size_t a = 0; a < R; a++)
    for (size_t b = a; b < R; b++) {
      Rat acc = 0;
      for (size_t tt = 0; tt < vecs[a].size(); tt++)
        acc += trace(elt_mul(vecs[a][tt], conjugate(vecs[b][tt])));
      P[a][b] = P[b][a] = acc;
      mpz_lcm(mu.get_mpz_t(), mu.get_mpz_t(), acc.get_den().get_mpz_t());
    }
  ColMat G(R, Col(R));
  for (size_t a = 0; a < R; a++)
    for (size_t b = 0; b < R; b++) {
      Rat x = P[a][b] * mu;
      if (x.get_den() != 1) throw invariant_error("gram scaling failed");
      G[a][b] = x.get_num();
    }
  return {std::move(G), std::move(mu)};
}

struct EnumOutcome {
  std::vector<CycloElt> vec;
  Rat sq;
  size_t dim;
};

EnumOutcome enumerate_module(const PseudoBasisModule& M,
                             const std::vector<std::vector<CycloElt>>& vecs,
                             size_t dim_cap)
{
  auto [G, mu] = module_gram(vecs);
  GramLattice gl(std::move(G));
  SvpResult sv = svp_enumerate(gl, dim_cap);

  EnumOutcome out;
  out.dim = vecs.size();
  out.sq = Rat(sv.sq_length, mu);
  out.sq.canonicalize();
  out.vec.assign(M.ambient, elt_zero(M.field));
  for (size_t a = 0; a < vecs.size(); a++) {
    if (sv.coeffs[a] == 0) continue;
    Rat c(sv.coeffs[a]);
    for (size_t tt = 0; tt < M.ambient; tt++)
      out.vec[tt] = elt_add(out.vec[tt], elt_scale(c, vecs[a][tt]));
  }
  Rat direct = 0;
  for (const CycloElt& w : out.vec)
    direct += trace(elt_mul(w, conjugate(w)));
  if (direct != out.sq)
    throw invariant_error("module winner length mismatch");
  return out;
}

} // namespace

ModuleSvpResult module_svp(const PseudoBasisModule& M, size_t dim_cap)
{
  ModuleReduction red = module_reduce(M);
  u64 T = red.common_level;

  std::vector<const IdealLattice*> mixed;
  bool uniform = true;
  for (const ModuleEntryReduction& e : red.entries) {
    mixed.push_back(&e.c);
    if (e.rbar != T) uniform = false;
  }
  EnumOutcome best = enumerate_module(M, sublattice_vectors(M, red, mixed),
                                      dim_cap);

  ModuleSvpResult res;
  res.used_fallback = false;
  if (!uniform) {
    // Entries reduced to different sublevels: re-do the enumeration at
    // the common level, which provably preserves the module minimum,
    // and keep the mixed answer only if it matches.
    std::vector<IdealLattice> at_T;
    at_T.reserve(M.rank);
    for (const ModuleEntryReduction& e : red.entries)
      at_T.push_back(intersect_subring(e.J, T));
    std::vector<const IdealLattice*> ptrs;
    for (const IdealLattice& c : at_T) ptrs.push_back(&c);
    EnumOutcome common =
        enumerate_module(M, sublattice_vectors(M, red, ptrs), dim_cap);
    if (common.sq > best.sq)
      throw invariant_error("sublevel enumeration lost a shorter vector");
    if (common.sq < best.sq) {
      best = std::move(common);
      res.used_fallback = true;
    }
  }

  res.vec = std::move(best.vec);
  res.sq_length = best.sq;
  res.dim_enumerated = best.dim;
  res.common_level = T;
  res.compositum = red.compositum;
  for (const ModuleEntryReduction& e : red.entries)
    res.rbar.push_back(e.rbar);
  res.degraded = red.degraded;
  return res;
}

Rat reduced_module_volume(const PseudoBasisModule& M,
                          const ModuleReduction& red)
{
  const FieldPtr& F = M.field;
  u64 t = red.compositum;
  FieldPtr K = F->sublevel_field(t);

  std::vector<std::vector<CycloElt>> bK;
  for (const ModuleEntryReduction& e : red.entries) {
    std::vector<CycloElt> row;
    for (const CycloElt& bp : e.b_prime)
      row.push_back(restrict_to_sublevel(F, t, bp));
    bK.push_back(std::move(row));
  }
  std::vector<const std::vector<CycloElt>*> rows;
  for (const std::vector<CycloElt>& r : bK) rows.push_back(&r);
  CycloElt det = det_over_L(gram_over_L(rows, K, M.ambient), K);
  if (det.is_zero()) throw invariant_error("reduced pseudo-basis degenerate");

  Rat vol = rat_pow(Rat(abs(discriminant(*K))), (long)M.rank);
  vol *= norm(det);
  for (const ModuleEntryReduction& e : red.entries) {
    // Norm_K(c_k) = Norm_{K_k}(c_k)^(q^(t - j_k)), c_k at sublevel j_k.
    Int nk = absolute_norm(intersect_subring(e.J, e.sublevel));
    Int nK = int_pow(nk, int_pow(Int(F->q_base), t - e.sublevel).get_ui());
    vol *= Rat(nK * nK);
    vol /= rat_pow(Rat(e.Q), 2 * (long)K->degree);
  }
  return vol;
}

HermiteLift module_hermite_factor(const PseudoBasisModule& M,
                                  const ModuleReduction& red,
                                  const Rat& gamma)
{
  if (gamma <= 0) throw input_error("hermite factor must be positive");
  const CycloField& F = *M.field;
  u64 D = F.degree, d = M.rank;
  u64 t = red.compositum;
  FieldPtr K = F.sublevel_field(t);
  u64 rK = K->degree;
  u64 index = D / rK; // q^(n - t)

  Int disc_L = abs(discriminant(F));
  Int disc_K = abs(discriminant(*K));
  Int disc_K_pow = int_pow(disc_K, index);
  if (disc_L % disc_K_pow != 0)
    throw invariant_error("discriminant tower identity failed");
  Int norm_rel_disc = disc_L / disc_K_pow;

  // Per-prime exponent of gamma_out^(2dD):
  //   2*index*(fL - [K:K_k]*fK_k) per prime-ideal factor copy.
  std::map<u64, long> p_exp;
  Int norm_prod_pow = 1; // prod_k Norm(J_k)^(2(index-1))
  for (const ModuleEntryReduction& e : red.entries) {
    Int nm = absolute_norm(e.J);
    norm_prod_pow *= int_pow(nm, 2 * (index - 1));
    if (nm == 1) continue;
    if (!nm.fits_ulong_p())
      throw resource_error("ideal norm too large to factor");
    u64 relK = int_pow(Int(F.q_base), t - e.sublevel).get_ui();
    for (auto [p, epow] : factorize_u64(nm.get_ui())) {
      if (F.N % p == 0) throw input_error("ramified factor present");
      u64 fL = multiplicative_order(p, F.N);
      if (epow % fL != 0)
        throw invariant_error("norm inconsistent with inertia degrees");
      u64 copies = epow / fL;
      u64 fKk =
          multiplicative_order(p, F.sublevel_conductor(e.sublevel));
      long per = 2 * (long)index * ((long)fL - (long)(relK * fKk));
      p_exp[p] += (long)copies * per;
    }
  }

  Int num = int_pow(Int(gamma.get_num()), 2 * d * D) *
            int_pow(Int(index), d * D) * norm_prod_pow;
  Int den = int_pow(Int(gamma.get_den()), 2 * d * D) *
            int_pow(norm_rel_disc, d);
  Rat p_part = 1; // prod p^(total exponent), the denominator term
  for (auto [p, e] : p_exp) {
    if (e >= 0)
      p_part *= Rat(int_pow(Int(p), (u64)e));
    else
      p_part /= Rat(int_pow(Int(p), (u64)(-e)));
  }
  HermiteLift h;
  h.gamma_in = gamma;
  h.deg_L = d * D;
  h.deg_K = d * rK;
  Rat base(num, den);
  base.canonicalize();
  h.out_pow = base / p_part;
  h.simplified_pow =
      Rat(int_pow(Int(gamma.get_num()), 2 * d * D) *
              int_pow(Int(index), d * D) * norm_prod_pow,
          int_pow(Int(gamma.get_den()), 2 * d * D));
  h.simplified_pow.canonicalize();
  if (h.out_pow > h.simplified_pow)
    throw invariant_error("lift exceeded its simplified bound");
  h.collapsed = (Rat(norm_prod_pow) == p_part);

  auto log2_int = [](const Int& v) {
    long e2;
    double m = mpz_get_d_2exp(&e2, v.get_mpz_t());
    return std::log2(m) + (double)e2;
  };
  h.sqrt_term = std::sqrt((double)index);
  h.disc_term = std::exp2(-log2_int(norm_rel_disc) / (2.0 * (double)D));
  {
    double acc = 0;
    for (const ModuleEntryReduction& e : red.entries)
      acc += log2_int(absolute_norm(e.J));
    h.norm_term = std::exp2(
        acc * (1.0 / (double)(d * rK) - 1.0 / (double)(d * D)));
  }
  {
    double acc = 0;
    for (auto [p, e] : p_exp) acc += (double)e * std::log2((double)p);
    h.prime_term = std::exp2(-acc / (2.0 * (double)(d * D)));
  }

  double est = std::exp2((log2_int(Int(h.out_pow.get_num())) -
                          log2_int(Int(h.out_pow.get_den()))) /
                         (2.0 * (double)(d * D)));
  double eps = 1e-13;
  for (;; eps *= 4) {
    double lo = est * (1.0 - eps), hi = est * (1.0 + eps);
    if (lo < 0) lo = 0;
    if (rat_pow(Rat(lo), (long)(2 * d * D)) <= h.out_pow &&
        rat_pow(Rat(hi), (long)(2 * d * D)) >= h.out_pow) {
      h.out_lo = lo;
      h.out_hi = hi;
      break;
    }
    if (eps > 1.0) throw invariant_error("enclosure failed to verify");
  }
  return h;
}

bool hermite_pow_satisfies(const Rat& sq, const Rat& vol, u64 rank,
                           const Rat& pow2R)
{
  if (sq < 0 || vol <= 0 || pow2R <= 0)
    throw input_error("hermite test needs positive inputs");
  return rat_pow(sq, (long)rank) <= pow2R * vol;
}

} // namespace cyclored
