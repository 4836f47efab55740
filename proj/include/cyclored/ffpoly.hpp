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
#ifndef CYCLORED_FFPOLY_HPP
#define CYCLORED_FFPOLY_HPP

#include <string>
#include <vector>

#include "cyclored/intmath.hpp"

namespace cyclored {

/* Integer polynomials, ascending coefficients, no trailing zeros.
 * The zero polynomial is the empty list and has degree -1. */
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  const Int& operator[](size_t i) const { return c[i]; }
  bool operator==(const IntPoly& o) const { return c == o.c; }

  void normalize();
  std::string to_string() const;
};

IntPoly ip_add(const IntPoly& a, const IntPoly& b);
IntPoly ip_sub(const IntPoly& a, const IntPoly& b);
IntPoly ip_mul(const IntPoly& a, const IntPoly& b);
// Exact division by a monic divisor; throws if the remainder is nonzero.
IntPoly ip_divexact(const IntPoly& a, const IntPoly& b);
Int ip_eval(const IntPoly& a, const Int& x);
IntPoly ip_xn_minus_1(u64 n);

// Phi_N, computed by iterated division of x^N - 1 by Phi_d over proper
// divisors d of N.  Memoized; returned reference stays valid.
const IntPoly& cyclotomic_poly(u64 N);

/* Polynomials over F_p, p a 64-bit prime (p < 2^32 enforced so products
 * can be accumulated lazily in 128 bits).  Ascending coefficients in
 * [0, p), no trailing zeros. */
struct FpPoly {
  u64 p = 0;
  std::vector<u64> c;

  FpPoly() = default;
  FpPoly(u64 modulus, std::vector<u64> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  u64 lead() const { return c.back(); }
  bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
  bool operator!=(const FpPoly& o) const { return !(*this == o); }

  void normalize();
  std::string to_string() const;
};

FpPoly fp_from_int(const IntPoly& a, u64 p);
FpPoly fp_x(u64 p);                       // the monomial x
FpPoly fp_one(u64 p);
FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_rem(const FpPoly& a, const FpPoly& f);
FpPoly fp_divexact(const FpPoly& a, const FpPoly& b);
FpPoly fp_make_monic(const FpPoly& a);
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b);   // monic gcd
FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& f);
FpPoly fp_derivative(const FpPoly& a);

// Standard Rabin irreducibility test over F_p.
bool is_irreducible(const FpPoly& f);

// g(x^t): coefficient j of g becomes coefficient j*t.
FpPoly lift_factor(const FpPoly& g, u64 t);

struct FactorSet {
  u64 conductor = 0;
  u64 modulus = 0;
  u64 common_degree = 0;           // m = ord_N(rho)
  u64 count = 0;                   // g = phi(N)/m
  std::vector<FpPoly> factors;     // monic, sorted by coefficient list
};

/* Factor Phi_N mod rho.  All irreducible factors share degree
 * m = ord_N(rho), so a single equal-degree split suffices; the split's
 * random sequence is seeded from (N, rho) and is fully reproducible.
 * Ramified inputs gcd(rho, N) > 1 are rejected. */
FactorSet factor_cyclotomic_mod_p(u64 N, u64 rho);

/* Check the factor-lifting law between conductors s*q^A and s*q^(n+1):
 * every irreducible factor of Phi_{s q^A} mod rho must stay irreducible
 * under x -> x^(q^(n-A+1)) and the lifts must account for every factor
 * of Phi_{s q^(n+1)} mod rho.  Returns false on any mismatch. */
bool verify_lift_theorem(u64 s, u64 q_base, u64 A, u64 n, u64 rho);

// Smallest e with f | x^e - 1, searched over divisors of bound.
// For irreducible factors of Phi_N this is N when bound = N.
u64 factor_order(const FpPoly& f, u64 bound);

} // namespace cyclored

#endif
