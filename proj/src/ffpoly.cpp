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
#include "cyclored/ffpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "cyclored/errors.hpp"

namespace cyclored {

/*{{{ IntPoly */
IntPoly::IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

void IntPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string IntPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << (c[i] > 0 ? " + " : " - ");
    else if (c[i] < 0) os << "-";
    Int a = abs(c[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPoly ip_add(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return IntPoly(std::move(r));
}

IntPoly ip_sub(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return IntPoly(std::move(r));
}

IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  }
  return IntPoly(std::move(r));
}

IntPoly ip_divexact(const IntPoly& a, const IntPoly& b) {
  if (!b.is_monic()) throw input_error("ip_divexact: divisor must be monic");
  std::vector<Int> rem = a.c;
  int db = b.degree();
  int dq = static_cast<int>(rem.size()) - 1 - db;
  if (dq < 0) {
    if (a.is_zero()) return IntPoly();
    throw invariant_error("ip_divexact: nonzero remainder");
  }
  std::vector<Int> q(dq + 1, Int(0));
  for (int k = dq; k >= 0; --k) {
    Int lead = rem[k + db];
    if (lead == 0) continue;
    q[k] = lead;
    for (int i = 0; i <= db; ++i) rem[k + i] -= lead * b.c[i];
  }
  for (const Int& v : rem)
    if (v != 0) throw invariant_error("ip_divexact: nonzero remainder");
  return IntPoly(std::move(q));
}

Int ip_eval(const IntPoly& a, const Int& x) {
  Int r = 0;
  for (int i = a.degree(); i >= 0; --i) r = r * x + a.c[i];
  return r;
}

IntPoly ip_xn_minus_1(u64 n) {
  std::vector<Int> c(n + 1, Int(0));
  c[0] = -1;
  c[n] = 1;
  return IntPoly(std::move(c));
}

const IntPoly& cyclotomic_poly(u64 N) {
  if (N < 1) throw input_error("cyclotomic_poly: N must be >= 1");
  static std::map<u64, IntPoly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;

  // Phi_N = (x^N - 1) / prod_{d|N, d<N} Phi_d, built bottom-up so every
  // divisor is already cached when needed.
  std::function<const IntPoly&(u64)> get = [&](u64 n) -> const IntPoly& {
    auto hit = cache.find(n);
    if (hit != cache.end()) return hit->second;
    IntPoly acc = ip_xn_minus_1(n);
    for (u64 d : divisors_u64(n)) {
      if (d == n) continue;
      acc = ip_divexact(acc, get(d));
    }
    return cache.emplace(n, std::move(acc)).first->second;
  };
  return get(N);
}
/*}}}*/

/*{{{ FpPoly arithmetic */
FpPoly::FpPoly(u64 modulus, std::vector<u64> coeffs)
    : p(modulus), c(std::move(coeffs)) {
  if (p < 2 || p >= (1ULL << 32))
    throw input_error("FpPoly: modulus out of supported range");
  for (u64& v : c) v %= p;
  normalize();
}

void FpPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string FpPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    if (c[i] != 1 || i == 0) os << c[i];
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

FpPoly fp_from_int(const IntPoly& a, u64 p) {
  std::vector<u64> c(a.c.size());
  Int pz(static_cast<unsigned long>(p));
  for (size_t i = 0; i < a.c.size(); ++i) {
    Int r = a.c[i] % pz;
    if (r < 0) r += pz;
    c[i] = r.get_ui();
  }
  return FpPoly(p, std::move(c));
}

FpPoly fp_x(u64 p) { return FpPoly(p, {0, 1}); }
FpPoly fp_one(u64 p) { return FpPoly(p, {1}); }

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % a.p;
  r.normalize();
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + a.p - b.c[i]) % a.p;
  r.normalize();
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  if (a.is_zero() || b.is_zero()) return r;
  size_t na = a.c.size(), nb = b.c.size();
  r.c.assign(na + nb - 1, 0);
  // Coefficients are < 2^32, so partial sums fit a 128-bit accumulator
  // for any desk-scale degree; reduce once per output coefficient.
  for (size_t k = 0; k < r.c.size(); ++k) {
    unsigned __int128 acc = 0;
    size_t lo = k >= nb - 1 ? k - (nb - 1) : 0;
    size_t hi = std::min(k, na - 1);
    for (size_t i = lo; i <= hi; ++i)
      acc += static_cast<unsigned __int128>(a.c[i]) * b.c[k - i];
    r.c[k] = static_cast<u64>(acc % a.p);
  }
  r.normalize();
  return r;
}

// Remainder of a by f.  Walks only the nonzero coefficients of f, which
// makes reduction by sparse moduli (lifted factors g(x^t)) cheap.
FpPoly fp_rem(const FpPoly& a, const FpPoly& f) {
  if (f.is_zero()) throw input_error("fp_rem: zero modulus");
  u64 p = f.p;
  int df = f.degree();
  if (a.degree() < df) return a;
  std::vector<size_t> support;
  for (size_t i = 0; i + 1 < f.c.size(); ++i)
    if (f.c[i]) support.push_back(i);
  u64 linv = powmod_u64(f.lead(), p - 2, p);
  std::vector<u64> r = a.c;
  for (int k = static_cast<int>(r.size()) - 1; k >= df; --k) {
    if (r[k] == 0) continue;
    u64 q = mulmod_u64(r[k], linv, p);
    r[k] = 0;
    for (size_t i : support) {
      u64 sub = mulmod_u64(q, f.c[i], p);
      u64& dst = r[k - df + i];
      dst = (dst + p - sub) % p;
    }
  }
  FpPoly out;
  out.p = p;
  out.c = std::move(r);
  out.normalize();
  return out;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw input_error("fp_divexact: zero divisor");
  u64 p = b.p;
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) {
    if (a.is_zero()) return a;
    throw invariant_error("fp_divexact: nonzero remainder");
  }
  u64 linv = powmod_u64(b.lead(), p - 2, p);
  std::vector<u64> rem = a.c, q(dq + 1, 0);
  for (int k = dq; k >= 0; --k) {
    u64 lead = rem[k + db];
    if (lead == 0) continue;
    u64 qk = mulmod_u64(lead, linv, p);
    q[k] = qk;
    for (int i = 0; i <= db; ++i) {
      u64 sub = mulmod_u64(qk, b.c[i], p);
      rem[k + i] = (rem[k + i] + p - sub) % p;
    }
  }
  for (u64 v : rem)
    if (v) throw invariant_error("fp_divexact: nonzero remainder");
  FpPoly out;
  out.p = p;
  out.c = std::move(q);
  out.normalize();
  return out;
}

FpPoly fp_make_monic(const FpPoly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  u64 linv = powmod_u64(a.lead(), a.p - 2, a.p);
  FpPoly r = a;
  for (u64& v : r.c) v = mulmod_u64(v, linv, a.p);
  return r;
}

FpPoly fp_gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly u = a, v = b;
  while (!v.is_zero()) {
    FpPoly r = fp_rem(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  return fp_make_monic(u);
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& f) {
  if (e < 0) throw input_error("fp_powmod: negative exponent");
  FpPoly result = fp_one(f.p);
  FpPoly b = fp_rem(base, f);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (size_t i = bits; i-- > 0;) {
    result = fp_rem(fp_mul(result, result), f);
    if (mpz_tstbit(e.get_mpz_t(), i))
      result = fp_rem(fp_mul(result, b), f);
  }
  return result;
}

FpPoly fp_derivative(const FpPoly& a) {
  FpPoly r;
  r.p = a.p;
  if (a.degree() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = mulmod_u64(a.c[i], i % a.p, a.p);
  r.normalize();
  return r;
}
/*}}}*/

bool is_irreducible(const FpPoly& f) {
  if (f.is_zero()) throw input_error("is_irreducible: zero polynomial");
  int D = f.degree();
  if (D == 0) return false;
  if (D == 1) return true;
  u64 p = f.p;
  Int pz(static_cast<unsigned long>(p));
  FpPoly x = fp_x(p);
  // Rabin: x^(p^D) = x mod f, and gcd(x^(p^(D/w)) - x, f) = 1 for every
  // prime w dividing D.
  for (auto [w, e] : factorize_u64(static_cast<u64>(D))) {
    (void)e;
    Int exp = int_pow(pz, static_cast<unsigned long>(D / w));
    FpPoly xe = fp_powmod(x, exp, f);
    FpPoly g = fp_gcd(fp_sub(xe, x), f);
    if (g.degree() != 0) return false;
  }
  Int exp = int_pow(pz, static_cast<unsigned long>(D));
  FpPoly xD = fp_powmod(x, exp, f);
  return fp_sub(xD, x).is_zero();
}

FpPoly lift_factor(const FpPoly& g, u64 t) {
  if (t == 0) throw input_error("lift_factor: t must be positive");
  if (g.is_zero() || g.lead() != 1)
    throw input_error("lift_factor: input must be monic");
  FpPoly r;
  r.p = g.p;
  r.c.assign(static_cast<size_t>(g.degree()) * t + 1, 0);
  for (size_t j = 0; j < g.c.size(); ++j) r.c[j * t] = g.c[j];
  r.normalize();
  return r;
}

/*{{{ equal-degree splitting */
static FpPoly random_poly(u64 p, int max_deg, SplitMix64& rng) {
  std::vector<u64> c(max_deg + 1);
  for (u64& v : c) v = rng.below(p);
  FpPoly r;
  r.p = p;
  r.c = std::move(c);
  r.normalize();
  return r;
}

// Cantor-Zassenhaus split of a product of distinct degree-m irreducibles.
static void split_equal_degree(const FpPoly& f, u64 m, SplitMix64& rng,
                               std::vector<FpPoly>& out) {
  if (static_cast<u64>(f.degree()) == m) {
    out.push_back(fp_make_monic(f));
    return;
  }
  u64 p = f.p;
  FpPoly d;
  while (true) {
    FpPoly h = random_poly(p, f.degree() - 1, rng);
    if (h.degree() < 1) continue;
    if (p == 2) {
      // trace map h + h^2 + ... + h^(2^(m-1)) mod f
      FpPoly tr = h, cur = h;
      for (u64 i = 1; i < m; ++i) {
        cur = fp_rem(fp_mul(cur, cur), f);
        tr = fp_add(tr, cur);
      }
      d = fp_gcd(tr, f);
    } else {
      Int e = (int_pow(Int(static_cast<unsigned long>(p)),
                       static_cast<unsigned long>(m)) - 1) / 2;
      FpPoly he = fp_powmod(h, e, f);
      d = fp_gcd(fp_sub(he, fp_one(p)), f);
    }
    if (d.degree() > 0 && d.degree() < f.degree()) break;
  }
  split_equal_degree(d, m, rng, out);
  split_equal_degree(fp_divexact(f, d), m, rng, out);
}
/*}}}*/

FactorSet factor_cyclotomic_mod_p(u64 N, u64 rho) {
  if (N < 1) throw input_error("factor_cyclotomic_mod_p: N must be >= 1");
  if (!is_prime_u64(rho))
    throw input_error("factor_cyclotomic_mod_p: modulus must be prime");
  if (gcd_u64(rho, N) != 1)
    throw input_error("factor_cyclotomic_mod_p: ramified prime (rho | N)");

  FactorSet fs;
  fs.conductor = N;
  fs.modulus = rho;
  FpPoly phi = fp_from_int(cyclotomic_poly(N), rho);
  fs.common_degree = (N == 1) ? 1 : multiplicative_order(rho, N);
  fs.count = euler_phi_u64(N) / fs.common_degree;

  if (fs.count == 1) {
    fs.factors.push_back(fp_make_monic(phi));
  } else {
    SplitMix64 rng(N * 0x9e3779b97f4a7c15ULL ^ rho);
    split_equal_degree(phi, fs.common_degree, rng, fs.factors);
  }
  std::sort(fs.factors.begin(), fs.factors.end(),
            [](const FpPoly& a, const FpPoly& b) { return a.c < b.c; });

  // cheap sanity: the factors must multiply back to Phi_N mod rho
  FpPoly prod = fp_one(rho);
  for (const FpPoly& f : fs.factors) {
    if (static_cast<u64>(f.degree()) != fs.common_degree)
      throw invariant_error("factor_cyclotomic_mod_p: degree mismatch");
    prod = fp_mul(prod, f);
  }
  if (prod != phi)
    throw invariant_error("factor_cyclotomic_mod_p: product check failed");
  return fs;
}

bool verify_lift_theorem(u64 s, u64 q_base, u64 A, u64 n, u64 rho) {
  if (s < 1 || A < 1 || n + 1 < A)
    throw input_error("verify_lift_theorem: need s >= 1, 1 <= A <= n+1");
  if (!is_prime_u64(q_base) || !is_prime_u64(rho))
    throw input_error("verify_lift_theorem: q_base and rho must be prime");
  if (s % q_base == 0)
    throw input_error("verify_lift_theorem: require gcd(s, q_base) = 1");
  if (rho == q_base || s % rho == 0)
    throw input_error("verify_lift_theorem: require gcd(rho, s*q_base) = 1");

  u64 qA = 1;
  for (u64 i = 0; i < A; ++i) qA *= q_base;
  u64 t = 1;
  for (u64 i = 0; i < n + 1 - A; ++i) t *= q_base;
  u64 Nsmall = s * qA;
  u64 Nbig = Nsmall * t;

  FactorSet small = factor_cyclotomic_mod_p(Nsmall, rho);
  u64 m_big = multiplicative_order(rho, Nbig);
  u64 g_big = euler_phi_u64(Nbig) / m_big;
  if (small.count != g_big) return false;

  FpPoly phi_big = fp_from_int(cyclotomic_poly(Nbig), rho);
  for (const FpPoly& f : small.factors) {
    FpPoly lifted = lift_factor(f, t);
    // Every irreducible factor of Phi_Nbig mod rho has degree m_big, so
    // a monic divisor is irreducible exactly when its degree is m_big;
    // this sidesteps an irreducibility test at large degrees.
    if ((u64)lifted.degree() != m_big) return false;
    if (!fp_rem(phi_big, lifted).is_zero()) return false;
  }
  return true;
}

u64 factor_order(const FpPoly& f, u64 bound) {
  FpPoly x = fp_x(f.p);
  FpPoly one = fp_one(f.p);
  for (u64 d : divisors_u64(bound)) {
    if (fp_powmod(x, Int(static_cast<unsigned long>(d)), f) == one) return d;
  }
  return 0;
}

} // namespace cyclored
