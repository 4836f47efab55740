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
#include "cyclored/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "cyclored/errors.hpp"

namespace cyclored {

/*{{{ field construction */
static u64 default_q_base(u64 N) {
  // largest prime power factor wins
  u64 best_p = 0;
  Int best_val = 0;
  for (auto [p, e] : factorize_u64(N)) {
    Int val = int_pow(Int((unsigned long)p), e);
    if (val > best_val) { best_val = val; best_p = p; }
  }
  return best_p;
}

std::shared_ptr<const CycloField> CycloField::make(u64 N) {
  if (N < 2) throw input_error("CycloField: conductor must be >= 2");
  return make(N, default_q_base(N));
}

std::shared_ptr<const CycloField> CycloField::make(u64 N, u64 q_base) {
  if (N < 2) throw input_error("CycloField: conductor must be >= 2");
  if (!is_prime_u64(q_base) || N % q_base != 0)
    throw input_error("CycloField: q_base must be a prime dividing N");

  static std::map<std::pair<u64, u64>, std::shared_ptr<const CycloField>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(N, q_base);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto F = std::shared_ptr<CycloField>(new CycloField());
  F->N = N;
  F->q_base = q_base;
  u64 qpow = 1, npl = 0;
  u64 rest = N;
  while (rest % q_base == 0) { rest /= q_base; qpow *= q_base; ++npl; }
  F->s = rest;
  F->n = npl - 1;
  F->degree = euler_phi_u64(N);
  F->phi_poly = cyclotomic_poly(N);

  u64 d = F->degree;
  // x^d mod Phi = -(low part of Phi); then shift and re-reduce
  std::vector<Int> row(d);
  for (u64 i = 0; i < d; ++i) row[i] = -F->phi_poly.c[i];
  F->reduction_table.push_back(row);
  for (u64 k = 1; k + 1 < d; ++k) {
    const std::vector<Int>& prev = F->reduction_table.back();
    std::vector<Int> next(d, Int(0));
    Int top = prev[d - 1];
    for (u64 i = 0; i + 1 < d; ++i) next[i + 1] = prev[i];
    if (top != 0)
      for (u64 i = 0; i < d; ++i) next[i] += top * F->reduction_table[0][i];
    F->reduction_table.push_back(std::move(next));
  }

  F->zeta_pow.resize(N);
  std::vector<Int> cur(d, Int(0));
  cur[0] = 1;
  for (u64 e = 0; e < N; ++e) {
    F->zeta_pow[e] = cur;
    std::vector<Int> next(d, Int(0));
    Int top = cur[d - 1];
    for (u64 i = 0; i + 1 < d; ++i) next[i + 1] = cur[i];
    if (top != 0)
      for (u64 i = 0; i < d; ++i) next[i] += top * F->reduction_table[0][i];
    cur = std::move(next);
  }

  // Trace(zeta^j) = mu(N/g) * phi(N) / phi(N/g), g = gcd(j, N)
  F->trace_zeta.resize(d);
  for (u64 j = 0; j < d; ++j) {
    u64 g = std::gcd(j, N);
    u64 m = N / g;
    long mu = moebius_u64(m);
    F->trace_zeta[j] = Int((long)(mu * (long)(F->degree / euler_phi_u64(m))));
  }

  auto shared = std::shared_ptr<const CycloField>(F);
  cache.emplace(key, shared);
  return shared;
}

u64 CycloField::sublevel_conductor(u64 j) const {
  if (j > n) throw input_error("sublevel_conductor: j out of range");
  u64 c = s;
  for (u64 i = 0; i <= j; ++i) c *= q_base;
  return c;
}

std::shared_ptr<const CycloField> CycloField::sublevel_field(u64 j) const {
  return CycloField::make(sublevel_conductor(j), q_base);
}

u64 CycloField::sublevel_index(u64 j) const {
  if (j > n) throw input_error("sublevel_index: j out of range");
  u64 t = 1;
  for (u64 i = 0; i < n - j; ++i) t *= q_base;
  return t;
}
/*}}}*/

/*{{{ element basics */
CycloElt::CycloElt(FieldPtr F, std::vector<Rat> c)
    : field(std::move(F)), coeffs(std::move(c)) {
  if (coeffs.size() != field->degree)
    throw input_error("CycloElt: coefficient length must equal phi(N)");
  for (Rat& r : coeffs) r.canonicalize();
}

bool CycloElt::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Rat& r) { return r == 0; });
}

bool CycloElt::is_integral() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Rat& r) { return r.get_den() == 1; });
}

bool CycloElt::operator==(const CycloElt& o) const {
  return field->N == o.field->N && field->q_base == o.field->q_base &&
         coeffs == o.coeffs;
}

CycloElt elt_zero(const FieldPtr& F) {
  return CycloElt(F, std::vector<Rat>(F->degree, Rat(0)));
}

CycloElt elt_rational(const FieldPtr& F, const Rat& r) {
  CycloElt a = elt_zero(F);
  a.coeffs[0] = r;
  return a;
}

CycloElt elt_zeta_pow(const FieldPtr& F, u64 e) {
  e %= F->N;
  CycloElt a = elt_zero(F);
  for (u64 i = 0; i < F->degree; ++i) a.coeffs[i] = Rat(F->zeta_pow[e][i]);
  return a;
}

CycloElt elt_from_col(const FieldPtr& F, const Col& v) {
  if (v.size() != F->degree) throw input_error("elt_from_col: bad length");
  std::vector<Rat> c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = Rat(v[i]);
  return CycloElt(F, std::move(c));
}

Col elt_to_col(const CycloElt& a) {
  if (!a.is_integral()) throw input_error("elt_to_col: element not integral");
  Col v(a.coeffs.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeffs[i].get_num();
  return v;
}

static void check_same_field(const CycloElt& a, const CycloElt& b,
                             const char* op) {
  if (a.field->N != b.field->N || a.field->q_base != b.field->q_base)
    throw input_error(std::string(op) + ": field mismatch");
}

CycloElt elt_add(const CycloElt& a, const CycloElt& b) {
  check_same_field(a, b, "elt_add");
  CycloElt r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

CycloElt elt_sub(const CycloElt& a, const CycloElt& b) {
  check_same_field(a, b, "elt_sub");
  CycloElt r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  return r;
}

CycloElt elt_neg(const CycloElt& a) {
  CycloElt r = a;
  for (Rat& v : r.coeffs) v = -v;
  return r;
}

CycloElt elt_scale(const Rat& r, const CycloElt& a) {
  CycloElt out = a;
  for (Rat& v : out.coeffs) { v *= r; v.canonicalize(); }
  return out;
}

CycloElt elt_mul(const CycloElt& a, const CycloElt& b) {
  check_same_field(a, b, "elt_mul");
  u64 d = a.field->degree;
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (u64 i = 0; i < d; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (u64 j = 0; j < d; ++j) {
      if (b.coeffs[j] == 0) continue;
      prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  std::vector<Rat> red(d, Rat(0));
  for (u64 i = 0; i < d; ++i) red[i] = prod[i];
  for (u64 k = d; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const std::vector<Int>& row = a.field->reduction_table[k - d];
    for (u64 i = 0; i < d; ++i)
      if (row[i] != 0) red[i] += prod[k] * Rat(row[i]);
  }
  return CycloElt(a.field, std::move(red));
}
/*}}}*/

/*{{{ rational polynomial helpers (inverse, resultant) */
namespace {

using RatPoly = std::vector<Rat>;  // ascending, may carry trailing zeros

void rp_norm(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int rp_deg(const RatPoly& f) { return (int)f.size() - 1; }

// f <- f - (c * x^k) * g
void rp_submul(RatPoly& f, const Rat& c, size_t k, const RatPoly& g) {
  if (f.size() < g.size() + k) f.resize(g.size() + k, Rat(0));
  for (size_t i = 0; i < g.size(); ++i) f[i + k] -= c * g[i];
}

RatPoly rp_rem(RatPoly f, const RatPoly& g) {
  rp_norm(f);
  while (rp_deg(f) >= rp_deg(g)) {
    Rat c = f.back() / g.back();
    rp_submul(f, c, f.size() - g.size(), g);
    f.pop_back();
    rp_norm(f);
  }
  return f;
}

Rat rp_resultant(RatPoly f, RatPoly g) {
  rp_norm(f);
  rp_norm(g);
  if (f.empty() || g.empty()) return Rat(0);
  if (rp_deg(f) == 0) return rat_pow(f[0], rp_deg(g));
  if (rp_deg(g) == 0) return rat_pow(g[0], rp_deg(f));
  RatPoly r = rp_rem(f, g);
  int sign = (rp_deg(f) % 2 == 1 && rp_deg(g) % 2 == 1) ? -1 : 1;
  if (r.empty()) return Rat(0);
  Rat scale = rat_pow(g.back(), rp_deg(f) - rp_deg(r));
  Rat rest = rp_resultant(g, r);
  Rat out = scale * rest;
  if (sign < 0) out = -out;
  out.canonicalize();
  return out;
}

// extended gcd: returns (gcd, u) with u*f = gcd mod m
std::pair<RatPoly, RatPoly> rp_half_xgcd(RatPoly f, RatPoly m) {
  RatPoly r0 = std::move(m), r1 = std::move(f);
  rp_norm(r0);
  rp_norm(r1);
  RatPoly u0{}, u1{Rat(1)};              // coefficients of f
  while (!r1.empty()) {
    // quotient of r0 by r1
    RatPoly q;
    RatPoly rem = r0;
    rp_norm(rem);
    while (rp_deg(rem) >= rp_deg(r1) && !rem.empty()) {
      size_t k = rem.size() - r1.size();
      Rat c = rem.back() / r1.back();
      if (q.size() < k + 1) q.resize(k + 1, Rat(0));
      q[k] += c;
      rp_submul(rem, c, k, r1);
      rem.pop_back();
      rp_norm(rem);
    }
    RatPoly u2 = u0;
    // u2 = u0 - q*u1
    for (size_t k = 0; k < q.size(); ++k) {
      if (q[k] == 0) continue;
      rp_submul(u2, q[k], k, u1);
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
    rp_norm(u1);
  }
  return {r0, u0};
}

} // namespace

CycloElt elt_inv(const CycloElt& a) {
  if (a.is_zero()) throw input_error("elt_inv: zero element");
  RatPoly f(a.coeffs.begin(), a.coeffs.end());
  RatPoly m(a.field->phi_poly.c.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = Rat(a.field->phi_poly.c[i]);
  auto [g, u] = rp_half_xgcd(f, m);
  if (rp_deg(g) != 0)
    throw invariant_error("elt_inv: gcd with Phi_N not constant");
  std::vector<Rat> c(a.field->degree, Rat(0));
  for (size_t i = 0; i < u.size() && i < c.size(); ++i) {
    c[i] = u[i] / g[0];
    c[i].canonicalize();
  }
  return CycloElt(a.field, std::move(c));
}
/*}}}*/

/*{{{ automorphisms, trace, norm */
Automorphism::Automorphism(FieldPtr F, u64 i) : field(std::move(F)) {
  index = i % field->N;
  if (index == 0 || std::gcd(index, field->N) != 1)
    throw input_error("Automorphism: index not coprime to N");
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  if (a.field->N != b.field->N)
    throw input_error("compose: field mismatch");
  return Automorphism(a.field, (a.index * b.index) % a.field->N);
}

CycloElt apply_automorphism(const Automorphism& s, const CycloElt& a) {
  if (s.field->N != a.field->N)
    throw input_error("apply_automorphism: field mismatch");
  const CycloField& F = *a.field;
  std::vector<Rat> out(F.degree, Rat(0));
  for (u64 j = 0; j < F.degree; ++j) {
    if (a.coeffs[j] == 0) continue;
    u64 e = (j * s.index) % F.N;
    const std::vector<Int>& z = F.zeta_pow[e];
    for (u64 i = 0; i < F.degree; ++i)
      if (z[i] != 0) out[i] += a.coeffs[j] * Rat(z[i]);
  }
  return CycloElt(a.field, std::move(out));
}

CycloElt conjugate(const CycloElt& a) {
  return apply_automorphism(Automorphism(a.field, a.field->N - 1), a);
}

Rat trace(const CycloElt& a) {
  Rat t(0);
  for (u64 j = 0; j < a.field->degree; ++j)
    if (a.coeffs[j] != 0) t += a.coeffs[j] * Rat(a.field->trace_zeta[j]);
  t.canonicalize();
  return t;
}

Rat norm(const CycloElt& a) {
  if (a.is_zero()) return Rat(0);
  RatPoly f(a.coeffs.begin(), a.coeffs.end());
  RatPoly m(a.field->phi_poly.c.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = Rat(a.field->phi_poly.c[i]);
  // Norm(a) = prod over roots of Phi_N of a(root) = Res(Phi_N, a),
  // exact since Phi_N is monic.
  return rp_resultant(m, f);
}

ColMat trace_gram(const std::vector<CycloElt>& elts) {
  size_t k = elts.size();
  if (k == 0) throw input_error("trace_gram: empty input");
  for (const CycloElt& e : elts)
    if (!e.is_integral())
      throw input_error("trace_gram: elements must be integral");
  std::vector<CycloElt> conj;
  conj.reserve(k);
  for (const CycloElt& e : elts) conj.push_back(conjugate(e));
  ColMat G(k, Col(k, Int(0)));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i; j < k; ++j) {
      Rat t = trace(elt_mul(elts[i], conj[j]));
      if (t.get_den() != 1)
        throw invariant_error("trace_gram: non-integer trace pairing");
      G[j][i] = t.get_num();
      G[i][j] = G[j][i];
    }
  }
  return G;
}

Int discriminant(const CycloField& F) {
  if (F.N < 3) throw input_error("discriminant: N must be >= 3");
  Int num = int_pow(Int((unsigned long)F.N), F.degree);
  Int den(1);
  for (auto [p, e] : factorize_u64(F.N)) {
    (void)e;
    den *= int_pow(Int((unsigned long)p), F.degree / (p - 1));
  }
  if (num % den != 0)
    throw invariant_error("discriminant: formula not integral");
  Int mag = num / den;
  return (F.degree / 2) % 2 == 1 ? -mag : mag;
}

CycloElt relative_trace(const CycloElt& a, u64 j) {
  const CycloField& F = *a.field;
  if (j > F.n) throw input_error("relative_trace: invalid sublevel");
  u64 cond = F.s;
  for (u64 i = 0; i <= j; ++i) cond *= F.q_base;
  CycloElt acc = elt_zero(a.field);
  for (u64 i = 1; i < F.N; ++i) {
    if (i % cond != 1 % cond) continue;
    if (std::gcd(i, F.N) != 1) continue;
    acc = elt_add(acc, apply_automorphism(Automorphism(a.field, i), a));
  }
  // Result must live in K_j: support only on exponents divisible by
  // q^(n-j).
  u64 t = F.sublevel_index(j);
  for (u64 e = 0; e < F.degree; ++e)
    if (e % t != 0 && acc.coeffs[e] != 0)
      throw invariant_error("relative_trace: result not in subfield");
  return acc;
}

CycloElt embed_from_sublevel(const FieldPtr& L, u64 j, const CycloElt& aK) {
  if (j > L->n) throw input_error("embed_from_sublevel: invalid sublevel");
  u64 t = L->sublevel_index(j);
  if (aK.field->N != L->sublevel_conductor(j))
    throw input_error("embed_from_sublevel: element not at that sublevel");
  std::vector<Rat> c(L->degree, Rat(0));
  for (u64 i = 0; i < aK.field->degree; ++i) c[i * t] = aK.coeffs[i];
  return CycloElt(L, std::move(c));
}

CycloElt restrict_to_sublevel(const FieldPtr& L, u64 j, const CycloElt& aL) {
  if (j > L->n) throw input_error("restrict_to_sublevel: invalid sublevel");
  if (aL.field->N != L->N)
    throw input_error("restrict_to_sublevel: element not in L");
  u64 t = L->sublevel_index(j);
  FieldPtr K = L->sublevel_field(j);
  std::vector<Rat> c(K->degree, Rat(0));
  for (u64 e = 0; e < L->degree; ++e) {
    if (aL.coeffs[e] == 0) continue;
    if (e % t != 0)
      throw input_error("restrict_to_sublevel: element not in subfield");
    c[e / t] = aL.coeffs[e];
  }
  return CycloElt(K, std::move(c));
}
/*}}}*/

} // namespace cyclored
