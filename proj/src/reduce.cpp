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
#include "cyclored/reduce.hpp"
#include "cyclored/errors.hpp"

#include <cmath>

namespace cyclored {

ReductionPlan subfield_level(const FieldPtr& field, u64 rho)
{
  if (!is_prime_u64(rho)) throw input_error("rho is not prime");
  ReductionPlan plan;
  plan.rho = rho;
  plan.field = field;
  u64 n = field->n, q = field->q_base, s = field->s;

  if (field->N % rho == 0) {
    plan.r = n;
    plan.m_val = 0;
    plan.method_note = "rho divides the conductor; no reduction claimed";
  } else {
    u64 ord_top = multiplicative_order(rho, field->N);
    u64 r = n;
    for (u64 j = 0; j <= n; j++) {
      // conductor s*q^(j+1), index q^(n-j)
      u64 ord_j = multiplicative_order(rho, field->sublevel_conductor(j));
      if (ord_j * field->sublevel_index(j) == ord_top) {
        r = j;
        break;
      }
    }
    plan.r = r;

    // Reporting-only valuation decomposition rho^phi(s) = m*q^A + a.
    Int P = int_pow(Int(rho), euler_phi_u64(s));
    plan.a_val = mpz_fdiv_ui(P.get_mpz_t(), q);
    Int rest = P - Int(plan.a_val);
    if (rest == 0) {
      plan.A_val = 0;
      plan.m_val = 0;
      plan.method_note = "order criterion gives r=" + std::to_string(r) +
                         "; valuation shortcut degenerate (rho^phi(s) < q)";
    } else {
      plan.A_val = valuation(rest, Int(q));
      plan.m_val = rest / int_pow(Int(q), plan.A_val);
      u64 r_short = std::min<u64>(plan.A_val >= 1 ? plan.A_val - 1 : 0, n);
      if (r_short == r)
        plan.method_note = "order criterion gives r=" + std::to_string(r) +
                           "; valuation shortcut min(A-1,n) agrees";
      else
        plan.method_note =
            "order criterion gives r=" + std::to_string(r) +
            "; valuation shortcut min(A-1,n)=" + std::to_string(r_short) +
            " disagrees and is reported only";
    }
  }
  plan.subfield_conductor = field->sublevel_conductor(plan.r);
  plan.reduced_dim = euler_phi_u64(plan.subfield_conductor);
  return plan;
}

namespace {

IdealSvpResult enumerate_at(const IdealLattice& I, const IdealLattice& c,
                            u64 r, size_t dim_cap)
{
  const CycloField& F = *I.field;
  const FieldPtr& K = c.field;
  size_t dK = K->degree;
  u64 t = F.sublevel_index(r);

  std::vector<CycloElt> bas;
  bas.reserve(dK);
  for (const Col& col : c.basis) bas.push_back(elt_from_col(K, col));
  GramLattice gl(trace_gram(bas));
  SvpResult sv = svp_enumerate(gl, dim_cap);

  Col xK = mat_vec(c.basis, sv.coeffs);
  Col xL(F.degree, Int(0));
  for (size_t i = 0; i < dK; i++) xL[i * t] = xK[i];

  IdealSvpResult res;
  res.element = std::move(xL);
  res.sq_length = Int(t) * sv.sq_length;
  res.r_used = r;
  res.dim_enumerated = dK;

  if (!solve_hnf(I.basis, res.element))
    throw invariant_error("lifted minimizer left the ideal");
  CycloElt x = elt_from_col(I.field, res.element);
  if (trace(elt_mul(x, conjugate(x))) != res.sq_length)
    throw invariant_error("trace scale mismatch on the lifted minimizer");
  return res;
}

} // namespace

IdealSvpResult prime_ideal_svp(const IdealLattice& p, size_t dim_cap)
{
  if (!p.generators)
    throw input_error("prime ideal must carry its two-generator form");
  u64 rho = p.generators->first;
  if (p.field->N % rho == 0) throw input_error("ramified prime");

  ReductionPlan plan = subfield_level(p.field, rho);
  // The basis check is cheap insurance: if the planned level were ever
  // wrong, retry one level up instead of returning a wrong answer.
  for (u64 r = plan.r;; r++) {
    IdealLattice c = intersect_subring(p, r);
    if (direct_sum_check(p, c, r)) return enumerate_at(p, c, r, dim_cap);
    if (r == p.field->n)
      throw invariant_error("direct-sum check failed at the top level");
  }
}

IdealSvpResult general_ideal_svp(const IdealLattice& I, size_t dim_cap)
{
  const CycloField& F = *I.field;
  for (u64 rbar = 1; rbar <= F.n; rbar++) {
    IdealLattice c = intersect_subring(I, rbar);
    if (direct_sum_check(I, c, rbar))
      return enumerate_at(I, c, rbar, dim_cap);
  }
  // n = 0, or nothing passed: enumerate the full-dimension lattice.
  return enumerate_at(I, intersect_subring(I, F.n), F.n, dim_cap);
}

SpecialPrimeReport special_prime_class(u64 rho, const FieldPtr& field)
{
  if (!is_prime_u64(rho)) throw input_error("rho is not prime");
  if (gcd_u64(rho, field->N) != 1)
    throw input_error("special-prime classes assume gcd(rho, N) = 1");
  u64 q = field->q_base, s = field->s;
  Int P = int_pow(Int(rho), euler_phi_u64(s));
  SpecialPrimeReport rep;
  if (q == 2) {
    if (mpz_fdiv_ui(P.get_mpz_t(), 4) == 3) {
      rep.cls = SpecialClass::EASY_S2;
      rep.reduced_dim = euler_phi_u64(s);
    }
  } else {
    u64 a = mpz_fdiv_ui(P.get_mpz_t(), q);
    Int rest = P - Int(a);
    if (rest != 0 && valuation(rest, Int(q)) == 1) {
      rep.cls = SpecialClass::EASY_SP;
      rep.reduced_dim = (q - 1) * euler_phi_u64(s);
    }
  }
  return rep;
}

namespace {

double log2_int(const Int& v)
{
  long e;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(d) + (double)e;
}

double log2_rat(const Rat& v)
{
  return log2_int(Int(v.get_num())) - log2_int(Int(v.get_den()));
}

} // namespace

HermiteLift hermite_lift_factor(const IdealLattice& I,
                                const ReductionPlan& plan, const Rat& gamma,
                                const std::vector<PrimeInertia>& split)
{
  if (gamma <= 0) throw input_error("hermite factor must be positive");
  const CycloField& F = *I.field;
  u64 D = F.degree;
  u64 r = plan.reduced_dim;
  if (r == 0 || D % r != 0)
    throw input_error("subfield degree does not divide the field degree");
  u64 index = D / r;       // = q^(n - plan.r)

  for (const PrimeInertia& pi : split) {
    if (gcd_u64(pi.p, F.N) != 1)
      throw input_error("ramified factor present");
    if (pi.f_K == 0 || pi.f_K > pi.f_L || pi.f_L % pi.f_K != 0)
      throw input_error("inconsistent inertia degrees");
  }

  Int norm_I = absolute_norm(I);
  FieldPtr K = F.sublevel_field(plan.r);
  Int disc_L = abs(discriminant(F));
  Int disc_K = abs(discriminant(*K));
  // |disc(L)| = |disc(K)|^(D/r) * Norm_K(disc(L/K)); divide exactly.
  Int disc_K_pow = int_pow(disc_K, index);
  if (disc_L % disc_K_pow != 0)
    throw invariant_error("discriminant tower identity failed");
  Int norm_rel_disc = disc_L / disc_K_pow;

  // out^(2D) = gamma^(2D) * index^D * Norm(I)^(2(D/r - 1))
  //            / ( norm_rel_disc * prod p^(2*(D/r)*(fL - fK)) )
  u64 e_norm = 2 * (index - 1);
  Int num = int_pow(Int(gamma.get_num()), 2 * D) * int_pow(Int(index), D) *
            int_pow(norm_I, e_norm);
  Int den = int_pow(Int(gamma.get_den()), 2 * D) * norm_rel_disc;
  Int prime_pow = 1;
  for (const PrimeInertia& pi : split)
    prime_pow *= int_pow(Int(pi.p), 2 * index * (pi.f_L - pi.f_K));
  den *= prime_pow;

  HermiteLift h;
  h.gamma_in = gamma;
  h.deg_L = D;
  h.deg_K = r;
  h.out_pow = Rat(num, den);
  h.out_pow.canonicalize();
  h.simplified_pow = Rat(int_pow(Int(gamma.get_num()), 2 * D) *
                             int_pow(Int(index), D) * int_pow(norm_I, e_norm),
                         int_pow(Int(gamma.get_den()), 2 * D));
  h.simplified_pow.canonicalize();
  if (h.out_pow > h.simplified_pow)
    throw invariant_error("lift exceeded its simplified bound");
  h.collapsed = int_pow(norm_I, e_norm) == prime_pow;

  h.sqrt_term = std::sqrt((double)index);
  h.disc_term = std::exp2(-log2_int(norm_rel_disc) / (2.0 * (double)D));
  h.norm_term = std::exp2(log2_int(norm_I) *
                          (1.0 / (double)r - 1.0 / (double)D));
  h.prime_term = std::exp2(-log2_int(prime_pow) / (2.0 * (double)D));

  // Verified enclosure of out = out_pow^(1/2D): widen a double estimate
  // until the exact 2D-th powers bracket out_pow.
  double est = std::exp2(log2_rat(h.out_pow) / (2.0 * (double)D));
  double eps = 1e-13;
  for (;; eps *= 4) {
    double lo = est * (1.0 - eps), hi = est * (1.0 + eps);
    if (lo < 0) lo = 0;
    if (rat_pow(Rat(lo), (long)(2 * D)) <= h.out_pow &&
        rat_pow(Rat(hi), (long)(2 * D)) >= h.out_pow) {
      h.out_lo = lo;
      h.out_hi = hi;
      break;
    }
    if (eps > 1.0) throw invariant_error("enclosure failed to verify");
  }
  return h;
}

bool hermite_lift_satisfies(const HermiteLift& h, const Int& sq_length,
                            const Int& gram_det)
{
  if (sq_length < 0 || gram_det <= 0)
    throw input_error("lengths and determinants must be positive");
  Int lhs = int_pow(sq_length, h.deg_L) * Int(h.out_pow.get_den());
  Int rhs = Int(h.out_pow.get_num()) * gram_det;
  return lhs <= rhs;
}

} // namespace cyclored
