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
#include "cyclored/verify.hpp"
#include "cyclored/errors.hpp"

#include <algorithm>
#include <functional>

namespace cyclored {

namespace {

struct Battery {
  std::string suite;
  const std::string& inject;
  std::vector<CheckResult>& out;

  void check(const std::string& name, const std::function<void()>& body)
  {
    CheckResult r;
    r.suite = suite;
    r.name = name;
    try {
      body();
      r.pass = true;
      r.detail = "ok";
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
};

void require(bool cond, const std::string& msg)
{
  if (!cond) throw invariant_error(msg);
}

// Direct full-dimension SVP on an ideal via its trace Gram.
Int direct_ideal_sq(const IdealLattice& I)
{
  std::vector<CycloElt> elts;
  for (const Col& c : I.basis) elts.push_back(elt_from_col(I.field, c));
  GramLattice gl(trace_gram(elts));
  return svp_enumerate(gl).sq_length;
}

void suite_ffpoly(Battery& B)
{
  B.check("factor-count-law", [] {
    for (u64 N : {5, 8, 12, 16, 21}) {
      for (u64 rho : {3, 7, 11, 13}) {
        if (N % rho == 0) continue;
        FactorSet fs = factor_cyclotomic_mod_p(N, rho);
        u64 m = multiplicative_order(rho, N);
        require(fs.common_degree == m, "factor degree != ord");
        require(fs.count == euler_phi_u64(N) / m, "factor count changed");
        FpPoly prod = fp_one(rho);
        for (const FpPoly& f : fs.factors) {
          require(is_irreducible(f), "reducible factor");
          prod = fp_mul(prod, f);
        }
        require(prod == fp_from_int(cyclotomic_poly(N), rho),
                "factor product != Phi mod rho");
      }
    }
  });
  B.check("lift-law-pass", [] {
    require(verify_lift_theorem(1, 2, 4, 4, 17), "17 on the 2-tower");
    require(verify_lift_theorem(1, 3, 1, 2, 7), "7 on the 3-tower");
    // 5^2 = 3*2^3 + 1, so the lift starts at conductor 3*2^3 = 24
    require(verify_lift_theorem(3, 2, 3, 3, 5), "5 with s=3");
  });
  B.check("lift-law-anomaly", [] {
    // rho = 3 mod 4 fails the hypotheses; the lift must be rejected
    // and the factor-count law still decides the truth.
    require(!verify_lift_theorem(1, 2, 2, 3, 3), "3 should not lift");
    FactorSet fs = factor_cyclotomic_mod_p(16, 3);
    require(fs.common_degree == 4 && fs.count == 2, "oracle recount");
  });
  B.check("cyclotomic-degree", [] {
    for (u64 N = 1; N <= 60; N++)
      require((u64)cyclotomic_poly(N).degree() == euler_phi_u64(N),
              "deg Phi_N != phi(N)");
  });
}

void suite_trace(Battery& B)
{
  B.check("gram-symmetry", [&B] {
    FieldPtr F = CycloField::make(16);
    std::vector<CycloElt> basis;
    for (u64 i = 0; i < F->degree; i++)
      basis.push_back(elt_zeta_pow(F, i));
    ColMat G = trace_gram(basis);
    if (B.inject == "gram-symmetry") G[0][1] += 1;
    for (size_t i = 0; i < G.size(); i++)
      for (size_t j = 0; j < G.size(); j++)
        require(G[i][j] == G[j][i], "trace Gram is not symmetric");
  });
  B.check("gram-determinant-discriminant", [] {
    for (u64 N : {8, 12, 16, 20}) {
      FieldPtr F = CycloField::make(N);
      std::vector<CycloElt> basis;
      for (u64 i = 0; i < F->degree; i++)
        basis.push_back(elt_zeta_pow(F, i));
      Int det = lattice_det(GramLattice(trace_gram(basis)));
      require(det == abs(discriminant(*F)),
              "Gram determinant != |discriminant|");
    }
  });
  B.check("root-of-unity-length", [] {
    FieldPtr F = CycloField::make(24);
    for (u64 e = 0; e < F->N; e++) {
      CycloElt z = elt_zeta_pow(F, e);
      require(trace(elt_mul(z, conjugate(z))) == Rat(F->degree),
              "|zeta^e|^2 != phi(N)");
    }
  });
  B.check("trace-norm-rationality", [] {
    FieldPtr F = CycloField::make(20);
    CycloElt a = elt_add(elt_zeta_pow(F, 3),
                         elt_scale(Rat(2), elt_zeta_pow(F, 7)));
    CycloElt b = elt_mul(a, elt_inv(a));
    require(b == elt_rational(F, 1), "a / a != 1");
    require(norm(a) != 0, "nonzero element with zero norm");
  });
}

void suite_ideal(Battery& B)
{
  B.check("prime-ideal-norm", [] {
    for (u64 N : {12, 16}) {
      FieldPtr F = CycloField::make(N);
      for (u64 rho : {5, 7, 13}) {
        if (N % rho == 0) continue;
        FactorSet fs = factor_cyclotomic_mod_p(N, rho);
        IdealLattice p = prime_ideal(F, rho, fs.factors[0]);
        require(absolute_norm(p) == int_pow(Int(rho), fs.common_degree),
                "Norm(p) != rho^f");
      }
    }
  });
  B.check("norm-multiplicativity", [] {
    FieldPtr F = CycloField::make(16);
    FactorSet f5 = factor_cyclotomic_mod_p(16, 5);
    FactorSet f7 = factor_cyclotomic_mod_p(16, 7);
    IdealLattice a = prime_ideal(F, 5, f5.factors[0]);
    IdealLattice b = prime_ideal(F, 7, f7.factors[0]);
    require(absolute_norm(ideal_mul(a, b)) ==
                absolute_norm(a) * absolute_norm(b),
            "Norm not multiplicative");
  });
  B.check("zeta-closure", [] {
    FieldPtr F = CycloField::make(16);
    FactorSet fs = factor_cyclotomic_mod_p(16, 7);
    IdealLattice p = prime_ideal(F, 7, fs.factors[0]);
    for (const Col& c : p.basis)
      require(solve_hnf(p.basis, col_mul_zeta(*F, c)).has_value(),
              "zeta * b left the ideal");
  });
  B.check("principal-norm", [] {
    FieldPtr F = CycloField::make(12);
    CycloElt a = elt_add(elt_rational(F, 2), elt_zeta_pow(F, 1));
    require(Rat(absolute_norm(principal_ideal(a))) == abs(norm(a)),
            "Norm(aO) != |Norm(a)|");
  });
}

void suite_reduce(Battery& B)
{
  B.check("lambda1-transfer", [] {
    FieldPtr F = CycloField::make(16);
    for (u64 rho : {5, 7, 41}) {
      FactorSet fs = factor_cyclotomic_mod_p(16, rho);
      IdealLattice p = prime_ideal(F, rho, fs.factors[0]);
      IdealSvpResult res = prime_ideal_svp(p);
      require(res.sq_length == direct_ideal_sq(p),
              "reduced minimum != direct minimum");
      require(solve_hnf(p.basis, res.element).has_value(),
              "minimizer escaped the ideal");
    }
  });
  B.check("direct-sum-threshold", [] {
    FieldPtr F = CycloField::make(16);
    FactorSet fs = factor_cyclotomic_mod_p(16, 7);
    IdealLattice p = prime_ideal(F, 7, fs.factors[0]);
    ReductionPlan plan = subfield_level(F, 7);
    require(direct_sum_check(p, intersect_subring(p, plan.r), plan.r),
            "direct sum fails at the planned level");
    for (u64 rp = 0; rp < plan.r; rp++)
      require(!direct_sum_check(p, intersect_subring(p, rp), rp),
              "direct sum passed below the planned level");
  });
  B.check("hermite-lift", [] {
    FieldPtr F = CycloField::make(16);
    FactorSet fs = factor_cyclotomic_mod_p(16, 5);
    IdealLattice p = prime_ideal(F, 5, fs.factors[0]);
    ReductionPlan plan = subfield_level(F, 5);
    u64 fK = multiplicative_order(5, plan.subfield_conductor);
    HermiteLift h = hermite_lift_factor(
        p, plan, Rat(1), {{5, fs.common_degree, fK}});
    IdealSvpResult res = prime_ideal_svp(p);
    std::vector<CycloElt> elts;
    for (const Col& c : p.basis) elts.push_back(elt_from_col(F, c));
    Int det = lattice_det(GramLattice(trace_gram(elts)));
    require(hermite_lift_satisfies(h, res.sq_length, det),
            "lifted Hermite inequality failed");
  });
  B.check("general-vs-prime", [] {
    FieldPtr F = CycloField::make(16);
    FactorSet fs = factor_cyclotomic_mod_p(16, 5);
    IdealLattice p = prime_ideal(F, 5, fs.factors[0]);
    IdealSvpResult a = prime_ideal_svp(p);
    IdealSvpResult b = general_ideal_svp(p);
    require(a.sq_length == b.sq_length,
            "general and prime paths disagree");
  });
}

void suite_modlat(Battery& B)
{
  B.check("volume-vs-gram", [] {
    FieldPtr F = CycloField::make(8);
    FactorSet fs = factor_cyclotomic_mod_p(8, 7);
    IdealLattice p = prime_ideal(F, 7, fs.factors[0]);
    std::vector<PseudoBasisEntry> entries;
    entries.push_back({whole_ring(F),
                       {elt_rational(F, 1), elt_zeta_pow(F, 1)}});
    entries.push_back({p, {elt_zero(F), elt_rational(F, 1)}});
    PseudoBasisModule M = make_module(F, std::move(entries), 2);

    std::vector<std::vector<CycloElt>> zbasis;
    for (const PseudoBasisEntry& e : M.entries)
      for (const Col& c : e.ideal.basis) {
        CycloElt x = elt_from_col(F, c);
        std::vector<CycloElt> v;
        for (const CycloElt& bt : e.b) v.push_back(elt_mul(x, bt));
        zbasis.push_back(std::move(v));
      }
    size_t R = zbasis.size();
    ColMat G(R, Col(R));
    for (size_t i = 0; i < R; i++)
      for (size_t j = 0; j < R; j++) {
        Rat acc = 0;
        for (size_t t = 0; t < 2; t++)
          acc += trace(elt_mul(zbasis[i][t], conjugate(zbasis[j][t])));
        require(acc.get_den() == 1, "integral basis gave fractions");
        G[i][j] = acc.get_num();
      }
    require(Rat(lattice_det(GramLattice(G))) == module_volume(M),
            "volume formula != Z-basis Gram determinant");
  });
  B.check("module-svp-vs-direct", [] {
    FieldPtr F = CycloField::make(8);
    FactorSet fs = factor_cyclotomic_mod_p(8, 7);
    IdealLattice p = prime_ideal(F, 7, fs.factors[0]);
    std::vector<PseudoBasisEntry> entries;
    entries.push_back({p, {elt_rational(F, 1), elt_zero(F)}});
    entries.push_back({whole_ring(F),
                       {elt_zeta_pow(F, 2), elt_rational(F, 1)}});
    PseudoBasisModule M = make_module(F, std::move(entries), 2);

    std::vector<std::vector<CycloElt>> zbasis;
    for (const PseudoBasisEntry& e : M.entries)
      for (const Col& c : e.ideal.basis) {
        CycloElt x = elt_from_col(F, c);
        std::vector<CycloElt> v;
        for (const CycloElt& bt : e.b) v.push_back(elt_mul(x, bt));
        zbasis.push_back(std::move(v));
      }
    size_t R = zbasis.size();
    ColMat G(R, Col(R));
    for (size_t i = 0; i < R; i++)
      for (size_t j = 0; j < R; j++) {
        Rat acc = 0;
        for (size_t t = 0; t < 2; t++)
          acc += trace(elt_mul(zbasis[i][t], conjugate(zbasis[j][t])));
        require(acc.get_den() == 1, "integral basis gave fractions");
        G[i][j] = acc.get_num();
      }
    Int direct = svp_enumerate(GramLattice(G)).sq_length;
    ModuleSvpResult res = module_svp(M);
    require(res.sq_length == Rat(direct),
            "module reduction lost the minimum");
  });
  B.check("stabilizer-contains-identity", [] {
    FieldPtr F = CycloField::make(16);
    PseudoBasisEntry e{whole_ring(F), {elt_rational(F, 1), elt_zeta_pow(F, 3)}};
    std::vector<u64> stab = pseudo_ideal_stabilizer(e);
    require(std::find(stab.begin(), stab.end(), 1) != stab.end(),
            "identity not in stabilizer");
  });
}

void suite_density(Battery& B)
{
  B.check("recount-by-factorization", [] {
    FieldPtr F = CycloField::make(16);
    DensityReport rep = scan_primes(F, 2000);
    u64 total = 0;
    for (const PrimeRow& row : rep.rows) {
      FactorSet fs = factor_cyclotomic_mod_p(F->N, row.rho);
      require(fs.count == row.g && fs.common_degree == row.f,
              "row disagrees with explicit factorization");
      total += fs.count;
    }
    require(total == rep.total_ideals, "total recount mismatch");
  });
  B.check("counting-bound", [] {
    for (u64 N : {16, 24}) {
      FieldPtr F = CycloField::make(N);
      DensityReport rep = scan_primes(F, 5000);
      Rat lhs = Rat(rep.easy_ideals) * Rat(rep.easy_ideals);
      require(lhs <= rep.alpha * rep.alpha * Rat(rep.bound),
              "easy count above the bound");
    }
  });
  B.check("compound-probability", [] {
    require(compound_probability(Rat(1, 2), {1}) == Rat(1, 2), "g=(1)");
    require(compound_probability(Rat(1, 2), {3}) == Rat(1, 8), "g=(3)");
    require(compound_probability(Rat(1, 3), {2, 3}) == rat_pow(Rat(1, 3), 6),
            "g=(2,3)");
  });
}

} // namespace

const std::vector<std::string>& verify_suite_names()
{
  static const std::vector<std::string> names = {
      "ffpoly", "trace", "ideal", "reduce", "modlat", "density"};
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const std::string& inject)
{
  std::vector<CheckResult> out;
  bool matched = false;
  auto want = [&](const char* name) {
    return suite == name || suite == "all";
  };
  if (want("ffpoly")) {
    Battery B{"ffpoly", inject, out};
    suite_ffpoly(B);
    matched = true;
  }
  if (want("trace")) {
    Battery B{"trace", inject, out};
    suite_trace(B);
    matched = true;
  }
  if (want("ideal")) {
    Battery B{"ideal", inject, out};
    suite_ideal(B);
    matched = true;
  }
  if (want("reduce")) {
    Battery B{"reduce", inject, out};
    suite_reduce(B);
    matched = true;
  }
  if (want("modlat")) {
    Battery B{"modlat", inject, out};
    suite_modlat(B);
    matched = true;
  }
  if (want("density")) {
    Battery B{"density", inject, out};
    suite_density(B);
    matched = true;
  }
  if (!matched)
    throw input_error("unknown suite '" + suite +
                      "' (expected ffpoly|trace|ideal|reduce|modlat|"
                      "density|all)");
  return out;
}

bool all_passed(const std::vector<CheckResult>& rs)
{
  for (const CheckResult& r : rs)
    if (!r.pass) return false;
  return true;
}

} // namespace cyclored
