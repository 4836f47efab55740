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
#include "cyclored/intmath.hpp"

#include <algorithm>
#include <numeric>

#include "cyclored/errors.hpp"

namespace cyclored {

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // This base set is a proven deterministic test for all n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_below(u64 bound) {
  std::vector<u64> out;
  if (bound <= 2) return out;
  std::vector<bool> sieve(bound, true);
  for (u64 i = 2; i < bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j < bound; j += i) sieve[j] = false;
  }
  return out;
}

std::map<u64, unsigned> factorize_u64(u64 n) {
  std::map<u64, unsigned> out;
  if (n == 0) throw input_error("factorize_u64: zero input");
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) { out[p]++; n /= p; }
  }
  if (n > 1) out[n]++;
  return out;
}

u64 euler_phi_u64(u64 n) {
  u64 phi = 1;
  for (auto [p, e] : factorize_u64(n)) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

int moebius_u64(u64 n) {
  int sign = 1;
  for (auto [p, e] : factorize_u64(n)) {
    (void)p;
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<u64> divisors_u64(u64 n) {
  std::vector<u64> divs{1};
  for (auto [p, e] : factorize_u64(n)) {
    size_t sz = divs.size();
    u64 pe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t k = 0; k < sz; ++k) divs.push_back(divs[k] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

u64 multiplicative_order(u64 q, u64 N) {
  if (N < 2) throw input_error("multiplicative_order: modulus must be >= 2");
  q %= N;
  if (gcd_u64(q, N) != 1)
    throw input_error("multiplicative_order: arguments not coprime");
  // The order divides phi(N); scan its divisors in increasing order.
  u64 phi = euler_phi_u64(N);
  for (u64 d : divisors_u64(phi)) {
    if (powmod_u64(q, d, N) == 1) return d;
  }
  throw invariant_error("multiplicative_order: no divisor of phi(N) worked");
}

unsigned valuation(const Int& v, const Int& p) {
  if (v == 0) throw input_error("valuation: zero input");
  Int t = abs(v);
  unsigned e = 0;
  while (true) {
    Int quo = t / p;
    if (quo * p != t) break;
    t = quo;
    ++e;
  }
  return e;
}

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0 && e < 0) throw input_error("rat_pow: 0 to negative power");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Int num = int_pow(base.get_num(), a);
  Int den = int_pow(base.get_den(), a);
  Rat r = (e < 0) ? Rat(den, num) : Rat(num, den);
  r.canonicalize();
  return r;
}

Int round_nearest(const Rat& r) {
  // floor(r + 1/2)
  Rat s = r + Rat(1, 2);
  return floor_rat(s);
}

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

} // namespace cyclored
