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
#include "cyclored/lattice.hpp"
#include "cyclored/errors.hpp"

#include <algorithm>
#include <functional>

namespace cyclored {

Int quad_form(const ColMat& gram, const Col& x)
{
  size_t n = gram.size();
  Int acc = 0;
  for (size_t i = 0; i < n; i++) {
    if (x[i] == 0) continue;
    Int row = 0;
    for (size_t j = 0; j < n; j++)
      if (x[j] != 0) row += gram[j][i] * x[j];
    acc += row * x[i];
  }
  return acc;
}

namespace {

/* Fraction-free Gram-Schmidt over the Gram matrix (exact rational
 * Cholesky with denominators kept as subdeterminants):
 *   d[i]    = det of the leading (i+1)x(i+1) block, d[-1] := 1
 *   lam[i][j] = mu_{i,j} * d[j]  for j < i
 * All divisions below are exact; positive definiteness is equivalent
 * to d[i] > 0 for all i.  Returns false instead of throwing when the
 * form is not definite (used by the validating constructor). */
bool gram_schmidt_int(const ColMat& g, std::vector<Col>& lam,
                      std::vector<Int>& d)
{
  size_t n = g.size();
  lam.assign(n, Col(n, Int(0)));
  d.assign(n, Int(0));
  for (size_t i = 0; i < n; i++) {
    for (size_t j = 0; j <= i; j++) {
      Int u = g[j][i];
      for (size_t k = 0; k < j; k++) {
        u = d[k] * u - lam[i][k] * lam[j][k];
        if (k > 0) {
          Int r;
          mpz_divexact(r.get_mpz_t(), u.get_mpz_t(), d[k - 1].get_mpz_t());
          u = r;
        }
      }
      if (j < i)
        lam[i][j] = u;
      else {
        if (u <= 0) return false;
        d[i] = u;
      }
    }
  }
  return true;
}

struct LllState {
  size_t n;
  ColMat g;            // working Gram, kept symmetric
  ColMat h;            // transform columns: new basis in old coordinates
  std::vector<Col> lam;
  std::vector<Int> d;

  const Int& dd(long i) const {
    static const Int one = 1;
    return i < 0 ? one : d[(size_t)i];
  }

  // b_k -= q * b_l on Gram, transform and lambda bookkeeping
  void reduce_pair(size_t k, size_t l)
  {
    Int two_lam = abs(Int(2 * lam[k][l]));
    if (two_lam <= d[l]) return;
    Int q = round_nearest(Rat(lam[k][l], d[l]));
    Int diag = g[k][k] - 2 * q * g[k][l] + q * q * g[l][l];
    for (size_t i = 0; i < n; i++) h[k][i] -= q * h[l][i];
    for (size_t i = 0; i < n; i++) g[k][i] -= q * g[l][i];
    for (size_t i = 0; i < n; i++) g[i][k] = g[k][i];
    g[k][k] = diag;
    lam[k][l] -= q * d[l];
    for (size_t j = 0; j < l; j++) lam[k][j] -= q * lam[l][j];
  }

  void swap_step(size_t k)
  {
    std::swap(h[k], h[k - 1]);
    std::swap(g[k], g[k - 1]);
    for (size_t i = 0; i < n; i++) std::swap(g[i][k], g[i][k - 1]);
    for (size_t j = 0; j + 1 < k; j++) std::swap(lam[k][j], lam[k - 1][j]);
    Int lv = lam[k][k - 1];
    Int b = dd((long)k - 2) * d[k] + lv * lv;
    {
      Int r;
      mpz_divexact(r.get_mpz_t(), b.get_mpz_t(), d[k - 1].get_mpz_t());
      b = r;
    }
    for (size_t i = k + 1; i < n; i++) {
      Int t = lam[i][k];
      Int num = d[k] * lam[i][k - 1] - lv * t;
      mpz_divexact(lam[i][k].get_mpz_t(), num.get_mpz_t(),
                   d[k - 1].get_mpz_t());
      num = b * t + lv * lam[i][k];
      mpz_divexact(lam[i][k - 1].get_mpz_t(), num.get_mpz_t(),
                   d[k].get_mpz_t());
    }
    d[k - 1] = b;
  }
};

} // namespace

GramLattice::GramLattice(ColMat g) : gram(std::move(g))
{
  size_t n = gram.size();
  if (n == 0) throw input_error("gram matrix is empty");
  for (const Col& c : gram)
    if (c.size() != n) throw input_error("gram matrix is not square");
  for (size_t i = 0; i < n; i++)
    for (size_t j = 0; j < i; j++)
      if (gram[j][i] != gram[i][j])
        throw input_error("gram matrix is not symmetric");
  std::vector<Col> lam;
  std::vector<Int> d;
  if (!gram_schmidt_int(gram, lam, d))
    throw input_error("gram matrix is not positive definite");
}

LllResult lll_reduce(const GramLattice& lat)
{
  // delta = 99/100, integer Lovasz test:
  //   swap  <=>  100 * d_k * d_{k-2}  <  99 * d_{k-1}^2 - 100 * lambda^2
  static const Int delta_num = 99, delta_den = 100;

  LllState st;
  st.n = lat.dim();
  st.g = lat.gram;
  st.h = identity_cols(st.n);
  gram_schmidt_int(st.g, st.lam, st.d);

  size_t k = 1;
  while (k < st.n) {
    st.reduce_pair(k, k - 1);
    Int lv = st.lam[k][k - 1];
    Int lhs = delta_den * st.d[k] * st.dd((long)k - 2);
    Int rhs = delta_num * st.d[k - 1] * st.d[k - 1] - delta_den * lv * lv;
    if (lhs < rhs) {
      st.swap_step(k);
      k = std::max<size_t>(k, 2) - 1;
    } else {
      for (size_t l = k - 1; l-- > 0;) st.reduce_pair(k, l);
      k++;
    }
  }

  if (abs(det_cols(st.h)) != 1)
    throw invariant_error("LLL transform is not unimodular");
  for (size_t i = 0; i < st.n; i++)
    for (size_t j = 0; j < st.n; j++) {
      Int want = 0;
      for (size_t a = 0; a < st.n; a++) {
        if (st.h[i][a] == 0) continue;
        Int row = 0;
        for (size_t b = 0; b < st.n; b++) row += lat.gram[b][a] * st.h[j][b];
        want += row * st.h[i][a];
      }
      if (want != st.g[j][i])
        throw invariant_error("LLL Gram/transform bookkeeping diverged");
    }

  return LllResult{GramLattice(std::move(st.g)), std::move(st.h)};
}

namespace {

/* Depth-first Schnorr-Euchner walk over all coefficient vectors with
 * Q(x) within `bound`.  In shrinking mode the bound is strict and is
 * lowered every time a shorter nonzero vector is found; otherwise every
 * lattice point with Q(x) == bound is reported. */
struct Enumerator {
  size_t n;
  std::vector<std::vector<Rat>> mu; // mu[i][j], j < i
  std::vector<Rat> bnorm;           // exact squared Gram-Schmidt norms
  Col x;
  bool shrinking;
  Rat bound;
  std::function<void(const Col&, const Rat&)> leaf;

  bool prune(const Rat& val) const
  {
    return shrinking ? val >= bound : val > bound;
  }

  void walk(long lvl, const Rat& partial)
  {
    if (lvl < 0) {
      bool zero = std::all_of(x.begin(), x.end(),
                              [](const Int& v) { return v == 0; });
      if (!zero) {
        if (shrinking) bound = partial;
        leaf(x, partial);
      }
      return;
    }
    size_t i = (size_t)lvl;
    Rat c = 0;
    for (size_t j = i + 1; j < n; j++)
      if (x[j] != 0) c -= mu[j][i] * x[j];
    Int x0 = round_nearest(c);
    bool up_dead = false, down_dead = false;
    for (Int step = 0; !(up_dead && down_dead); step++) {
      for (int dir = 0; dir < 2; dir++) {
        if (step == 0 && dir == 1) continue; // center visited once
        bool& dead = dir == 0 ? up_dead : down_dead;
        if (dead) continue;
        Int xi = dir == 0 ? Int(x0 + step) : Int(x0 - step);
        Rat t = Rat(xi) - c;
        Rat val = partial + bnorm[i] * t * t;
        if (prune(val)) {
          dead = true;
          if (step == 0) down_dead = true; // center fails: both sides do
          continue;
        }
        x[i] = xi;
        walk(lvl - 1, val);
      }
    }
    x[i] = 0;
  }
};

Col apply_transform(const ColMat& h, const Col& x)
{
  size_t n = h.size();
  Col out(n, Int(0));
  for (size_t k = 0; k < n; k++) {
    if (x[k] == 0) continue;
    for (size_t i = 0; i < n; i++) out[i] += h[k][i] * x[k];
  }
  return out;
}

void normalize_sign(Col& v)
{
  for (const Int& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (Int& w : v) w = -w;
    break;
  }
}

} // namespace

SvpResult svp_enumerate(const GramLattice& g, size_t dim_cap)
{
  size_t n = g.dim();
  if (n > dim_cap)
    throw resource_error("enumeration dimension " + std::to_string(n) +
                         " exceeds cap " + std::to_string(dim_cap));

  LllResult red = lll_reduce(g);
  const ColMat& rg = red.reduced.gram;

  std::vector<Col> lam;
  std::vector<Int> d;
  gram_schmidt_int(rg, lam, d);
  Enumerator en;
  en.n = n;
  en.mu.assign(n, std::vector<Rat>(n, Rat(0)));
  en.bnorm.assign(n, Rat(0));
  for (size_t i = 0; i < n; i++) {
    for (size_t j = 0; j < i; j++) {
      en.mu[i][j] = Rat(lam[i][j], d[j]);
      en.mu[i][j].canonicalize();
    }
    en.bnorm[i] = Rat(d[i], i == 0 ? Int(1) : d[i - 1]);
    en.bnorm[i].canonicalize();
  }
  en.x.assign(n, Int(0));

  // Phase 1: shrink to the exact minimum, seeded by the best diagonal.
  size_t seed = 0;
  for (size_t i = 1; i < n; i++)
    if (rg[i][i] < rg[seed][seed]) seed = i;
  en.shrinking = true;
  en.bound = Rat(rg[seed][seed]);
  Col best_local(n, Int(0));
  best_local[seed] = 1;
  en.leaf = [&](const Col& x, const Rat&) { best_local = x; };
  en.walk((long)n - 1, Rat(0));
  Rat min_sq = en.bound;
  if (min_sq.get_den() != 1 || quad_form(rg, best_local) != min_sq.get_num())
    throw invariant_error("enumeration minimum is inconsistent");

  // Phase 2: collect every vector attaining the minimum, then break the
  // tie in the caller's coordinates.
  Col winner;
  bool have = false;
  en.shrinking = false;
  en.bound = min_sq;
  en.x.assign(n, Int(0));
  en.leaf = [&](const Col& x, const Rat& val) {
    if (val != min_sq) return;
    Col cand = apply_transform(red.transform, x);
    normalize_sign(cand);
    if (!have || std::lexicographical_compare(cand.begin(), cand.end(),
                                              winner.begin(), winner.end())) {
      winner = cand;
      have = true;
    }
  };
  en.walk((long)n - 1, Rat(0));
  if (!have) throw invariant_error("enumeration lost the minimum");

  SvpResult res;
  res.coeffs = winner;
  res.sq_length = quad_form(g.gram, winner);
  if (res.sq_length != min_sq.get_num())
    throw invariant_error("shortest vector length mismatch");
  return res;
}

Int lattice_det(const GramLattice& g)
{
  Int det = det_cols(g.gram);
  if (det <= 0) throw invariant_error("gram determinant must be positive");
  return det;
}

bool hermite_check(const SvpResult& v, const GramLattice& g, const Rat& gamma)
{
  if (gamma <= 0) throw input_error("hermite factor must be positive");
  size_t dcount = g.dim();
  // sq^d * den^(2d) <= num^(2d) * det(gram)  decides
  // sq <= gamma^2 * det(gram)^(1/d) exactly.
  Int lhs = int_pow(v.sq_length, dcount) *
            int_pow(gamma.get_den(), 2 * dcount);
  Int rhs = int_pow(gamma.get_num(), 2 * dcount) * lattice_det(g);
  return lhs <= rhs;
}

} // namespace cyclored
