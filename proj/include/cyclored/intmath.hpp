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
#ifndef CYCLORED_INTMATH_HPP
#define CYCLORED_INTMATH_HPP

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace cyclored {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

std::vector<u64> primes_below(u64 bound);

// n = prod p^e as an ordered map p -> e.  Trial division; desk scale only.
std::map<u64, unsigned> factorize_u64(u64 n);

u64 euler_phi_u64(u64 n);
int moebius_u64(u64 n);
std::vector<u64> divisors_u64(u64 n);

// Order of q in (Z/N)^x.  Requires N >= 2 and gcd(q, N) = 1.
u64 multiplicative_order(u64 q, u64 N);

// Largest e with p^e | v (v != 0).
unsigned valuation(const Int& v, const Int& p);

Int int_pow(const Int& base, unsigned long e);
Rat rat_pow(const Rat& base, long e);

// Nearest integer to r; half-integers round towards +infinity.
Int round_nearest(const Rat& r);
Int floor_rat(const Rat& r);

// splitmix64: tiny deterministic generator for randomized but
// reproducible algorithm choices (seeded from problem parameters).
struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  u64 below(u64 n) { return next() % n; }
};

} // namespace cyclored

#endif
