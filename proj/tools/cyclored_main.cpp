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
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include "cyclored/errors.hpp"
#include "cyclored/json_io.hpp"
#include "cyclored/verify.hpp"

using namespace cyclored;

namespace {

struct Common {
  std::string out;
  size_t dim_cap = kDefaultEnumDimCap;
  bool allow_large = false;
  bool timing = false;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_cap = true)
{
  cmd->add_option("--out", c.out, "write JSON here instead of stdout");
  if (with_cap) {
    cmd->add_option("--dim-cap", c.dim_cap,
                    "enumeration dimension cap (default 40)");
    cmd->add_flag("--allow-large", c.allow_large,
                  "acknowledge a cap above 40");
    cmd->add_flag("--timing", c.timing,
                  "include wall_time in the output (non-deterministic)");
  }
}

size_t effective_cap(const Common& c)
{
  if (c.dim_cap > kDefaultEnumDimCap && !c.allow_large)
    throw input_error("dimension cap above 40 needs --allow-large");
  if (c.dim_cap == 0) throw input_error("dimension cap must be positive");
  return c.dim_cap;
}

void emit(const Common& c, const Json& j)
{
  if (c.out.empty())
    std::cout << dump_canonical(j);
  else
    write_file(c.out, j);
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 =
      std::chrono::steady_clock::now();
  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  }
};

Rat parse_gamma(const std::string& text)
{
  std::string s = text;
  size_t slash = s.find('/');
  Int num, den = 1;
  auto read = [](const std::string& part) {
    Int v;
    if (part.empty() || mpz_set_str(v.get_mpz_t(), part.c_str(), 10) != 0)
      throw input_error("malformed rational '" + part + "'");
    return v;
  };
  if (slash == std::string::npos) {
    num = read(s);
  } else {
    num = read(s.substr(0, slash));
    den = read(s.substr(slash + 1));
  }
  if (den == 0) throw input_error("gamma with zero denominator");
  Rat g(num, den);
  g.canonicalize();
  if (g <= 0) throw input_error("gamma must be positive");
  return g;
}

std::string class_name(SpecialClass cls)
{
  switch (cls) {
  case SpecialClass::EASY_S2: return "easy-s2";
  case SpecialClass::EASY_SP: return "easy-sp";
  default: return "none";
  }
}

Json plan_to_json(const ReductionPlan& plan)
{
  Json j;
  j["rho"] = Json((long long)plan.rho);
  j["conductor"] = Json((long long)plan.field->N);
  j["q_base"] = Json((long long)plan.field->q_base);
  j["r"] = Json((long long)plan.r);
  j["subfield_conductor"] = Json((long long)plan.subfield_conductor);
  j["reduced_dim"] = Json((long long)plan.reduced_dim);
  j["A"] = Json((long long)plan.A_val);
  j["m"] = int_to_json(plan.m_val);
  j["a"] = Json((long long)plan.a_val);
  j["method_note"] = plan.method_note;
  return j;
}

Json lift_to_json(const HermiteLift& h)
{
  Json j;
  j["gamma_in"] = rat_to_json(h.gamma_in);
  j["deg_L"] = Json((long long)h.deg_L);
  j["deg_K"] = Json((long long)h.deg_K);
  j["gamma_out_pow"] = rat_to_json(h.out_pow);
  j["simplified_pow"] = rat_to_json(h.simplified_pow);
  j["gamma_out_lo"] = h.out_lo;
  j["gamma_out_hi"] = h.out_hi;
  j["sqrt_term"] = h.sqrt_term;
  j["disc_term"] = h.disc_term;
  j["norm_term"] = h.norm_term;
  j["prime_term"] = h.prime_term;
  j["collapsed"] = h.collapsed;
  return j;
}

// Least sublevel whose zeta-shifts of I ∩ O_K tile I (n if none below).
u64 sublevel_ladder(const IdealLattice& I)
{
  const CycloField& F = *I.field;
  if (F.n == 0) return 0;
  for (u64 rb = 1; rb <= F.n; rb++)
    if (direct_sum_check(I, intersect_subring(I, rb), rb)) return rb;
  return F.n;
}

// Prime split of Norm(I) into PrimeInertia entries at sublevel r.
std::vector<PrimeInertia> norm_split(const IdealLattice& I, u64 r)
{
  const CycloField& F = *I.field;
  Int nm = absolute_norm(I);
  std::vector<PrimeInertia> split;
  if (nm == 1) return split;
  if (!nm.fits_ulong_p())
    throw resource_error("ideal norm too large to factor");
  u64 condK = F.sublevel_conductor(r);
  for (auto [p, e] : factorize_u64(nm.get_ui())) {
    if (F.N % p == 0)
      throw input_error("ramified prime factor " + std::to_string(p));
    u64 fL = multiplicative_order(p, F.N);
    if (e % fL != 0)
      throw invariant_error("norm inconsistent with inertia degree");
    u64 fK = multiplicative_order(p, condK);
    for (u64 i = 0; i < e / fL; i++) split.push_back({p, fL, fK});
  }
  return split;
}

int run_cli(int argc, char** argv)
{
  CLI::App app{"exact SVP on ideal and module lattices over cyclotomic "
               "rings via decomposition-group subfields"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- factor ----
  auto* cf = app.add_subcommand("factor", "factor Phi_N modulo a prime");
  static Common factor_c;
  static u64 factor_N = 0, factor_rho = 0;
  cf->add_option("--conductor", factor_N, "conductor N")->required();
  cf->add_option("--prime", factor_rho, "rational prime")->required();
  add_common(cf, factor_c, false);
  cf->callback([&] {
    FactorSet fs = factor_cyclotomic_mod_p(factor_N, factor_rho);
    Json j;
    j["conductor"] = Json((long long)fs.conductor);
    j["modulus"] = Json((long long)fs.modulus);
    j["common_degree"] = Json((long long)fs.common_degree);
    j["count"] = Json((long long)fs.count);
    Json arr = Json::array();
    for (const FpPoly& f : fs.factors) {
      Json c = Json::array();
      for (u64 x : f.c) c.push_back((long long)x);
      arr.push_back(c);
    }
    j["factors"] = arr;
    emit(factor_c, j);
  });

  // ---- reduce ----
  auto* cr = app.add_subcommand("reduce",
                                "plan the subfield reduction for a prime");
  static Common reduce_c;
  static u64 reduce_N = 0, reduce_rho = 0, reduce_q = 0;
  cr->add_option("--conductor", reduce_N, "conductor N")->required();
  cr->add_option("--q-base", reduce_q, "tower prime q (default: largest)");
  cr->add_option("--prime", reduce_rho, "rational prime")->required();
  add_common(cr, reduce_c, false);
  cr->callback([&] {
    FieldPtr F = reduce_q ? CycloField::make(reduce_N, reduce_q)
                          : CycloField::make(reduce_N);
    ReductionPlan plan = subfield_level(F, reduce_rho);
    SpecialPrimeReport sp = special_prime_class(reduce_rho, F);
    Json j = plan_to_json(plan);
    j["special_class"] = class_name(sp.cls);
    j["special_dim"] = Json((long long)sp.reduced_dim);
    emit(reduce_c, j);
  });

  // ---- svp-ideal ----
  auto* ci = app.add_subcommand("svp-ideal", "exact SVP on an ideal lattice");
  static Common ideal_c;
  static std::string ideal_in;
  ci->add_option("--in", ideal_in, "ideal JSON file")->required();
  add_common(ci, ideal_c);
  ci->callback([&] {
    Stopwatch sw;
    IdealLattice I = ideal_from_json(parse_file(ideal_in));
    size_t cap = effective_cap(ideal_c);
    IdealSvpResult res =
        I.generators ? prime_ideal_svp(I, cap) : general_ideal_svp(I, cap);
    Json j;
    Json coeffs = Json::array();
    for (const Int& x : res.element) coeffs.push_back(int_to_json(x));
    j["coeffs"] = coeffs;
    j["sq_length"] = int_to_json(res.sq_length);
    j["r_used"] = Json((long long)res.r_used);
    j["dim_enumerated"] = Json((long long)res.dim_enumerated);
    if (ideal_c.timing) j["wall_time"] = sw.seconds();
    emit(ideal_c, j);
  });

  // ---- svp (raw Gram) ----
  auto* cg = app.add_subcommand("svp", "exact SVP on a raw Gram matrix");
  static Common gram_c;
  static std::string gram_in;
  cg->add_option("--gram", gram_in, "JSON file with the Gram matrix")
      ->required();
  add_common(cg, gram_c);
  cg->callback([&] {
    Stopwatch sw;
    Json doc = parse_file(gram_in);
    const Json& rows = doc.is_array() ? doc : doc.at("gram");
    if (!rows.is_array() || rows.empty())
      throw input_error("gram must be a nonempty array of rows");
    ColMat G;
    for (const Json& row : rows) {
      if (!row.is_array() || row.size() != rows.size())
        throw input_error("gram must be square");
      Col col;
      for (const Json& x : row) col.push_back(json_to_int(x));
      G.push_back(std::move(col));
    }
    SvpResult res = svp_enumerate(GramLattice(G), effective_cap(gram_c));
    Json j;
    Json coeffs = Json::array();
    for (const Int& x : res.coeffs) coeffs.push_back(int_to_json(x));
    j["coeffs"] = coeffs;
    j["sq_length"] = int_to_json(res.sq_length);
    j["dim"] = Json((long long)G.size());
    if (gram_c.timing) j["wall_time"] = sw.seconds();
    emit(gram_c, j);
  });

  // ---- svp-module ----
  auto* cm = app.add_subcommand("svp-module",
                                "exact SVP on a pseudo-basis module");
  static Common mod_c;
  static std::string mod_in;
  cm->add_option("--in", mod_in, "module JSON file")->required();
  add_common(cm, mod_c);
  cm->callback([&] {
    Stopwatch sw;
    PseudoBasisModule M = module_from_json(parse_file(mod_in));
    ModuleSvpResult res = module_svp(M, effective_cap(mod_c));
    Json j;
    Json vec = Json::array();
    for (const CycloElt& v : res.vec) vec.push_back(elt_to_json(v));
    j["vec"] = vec;
    j["sq_length"] = rat_to_json(res.sq_length);
    j["dim_enumerated"] = Json((long long)res.dim_enumerated);
    j["common_level"] = Json((long long)res.common_level);
    j["compositum"] = Json((long long)res.compositum);
    Json rb = Json::array();
    for (u64 r : res.rbar) rb.push_back((long long)r);
    j["rbar"] = rb;
    j["used_fallback"] = res.used_fallback;
    j["degraded"] = res.degraded;
    if (mod_c.timing) j["wall_time"] = sw.seconds();
    emit(mod_c, j);
  });

  // ---- hermite-factor ----
  auto* ch = app.add_subcommand(
      "hermite-factor", "Hermite factor carried through the reduction");
  static Common herm_c;
  static std::string herm_in, herm_mod, herm_gamma = "1";
  ch->add_option("--in", herm_in, "ideal JSON file");
  ch->add_option("--module", herm_mod, "module JSON file");
  ch->add_option("--gamma", herm_gamma, "input factor, e.g. 3/2");
  add_common(ch, herm_c, false);
  ch->callback([&] {
    Rat gamma = parse_gamma(herm_gamma);
    if (herm_in.empty() == herm_mod.empty())
      throw input_error("give exactly one of --in or --module");
    Json j;
    if (!herm_in.empty()) {
      IdealLattice I = ideal_from_json(parse_file(herm_in));
      ReductionPlan plan;
      if (I.generators) {
        plan = subfield_level(I.field, I.generators->first);
      } else {
        plan.rho = 0;
        plan.field = I.field;
        plan.r = sublevel_ladder(I);
        plan.subfield_conductor = I.field->sublevel_conductor(plan.r);
        plan.reduced_dim = euler_phi_u64(plan.subfield_conductor);
        plan.method_note = "sublevel from the direct-sum ladder";
      }
      HermiteLift h =
          hermite_lift_factor(I, plan, gamma, norm_split(I, plan.r));
      j = lift_to_json(h);
      j["r"] = Json((long long)plan.r);
    } else {
      PseudoBasisModule M = module_from_json(parse_file(herm_mod));
      ModuleReduction red = module_reduce(M);
      HermiteLift h = module_hermite_factor(M, red, gamma);
      j = lift_to_json(h);
      j["compositum"] = Json((long long)red.compositum);
      j["volume"] = rat_to_json(module_volume(M));
      j["reduced_volume"] = rat_to_json(reduced_module_volume(M, red));
    }
    emit(herm_c, j);
  });

  // ---- density ----
  auto* cd = app.add_subcommand("density",
                                "census of prime ideals below a norm bound");
  static Common dens_c;
  static u64 dens_N = 0, dens_q = 0, dens_M = 0;
  static std::string dens_csv;
  cd->add_option("--conductor", dens_N, "conductor N")->required();
  cd->add_option("--q-base", dens_q, "tower prime q (default: largest)");
  cd->add_option("--bound", dens_M, "norm bound M")->required();
  cd->add_option("--threads", dens_c.threads,
                 "worker count (default: CYCLORED_THREADS or 1)");
  cd->add_option("--csv", dens_csv, "also write per-prime rows as CSV");
  add_common(cd, dens_c, false);
  cd->callback([&] {
    FieldPtr F = dens_q ? CycloField::make(dens_N, dens_q)
                        : CycloField::make(dens_N);
    DensityReport rep = scan_primes(F, dens_M, dens_c.threads);
    Json j;
    j["conductor"] = Json((long long)rep.N);
    j["q_base"] = Json((long long)rep.q_base);
    j["bound"] = Json((long long)rep.bound);
    j["total_ideals"] = Json((long long)rep.total_ideals);
    j["split_ideals"] = Json((long long)rep.split_ideals);
    j["easy_ideals"] = Json((long long)rep.easy_ideals);
    j["special_ideals"] = Json((long long)rep.special_ideals);
    j["ramified_primes"] = Json((long long)rep.ramified_primes);
    j["easy_density"] = rat_to_json(rep.easy_density);
    j["split_density"] = rat_to_json(rep.split_density);
    j["alpha"] = rat_to_json(rep.alpha);
    j["bound_value"] = rep.bound_value;
    j["chebotarev_reference"] = chebotarev_reference(*F, rep.bound);
    emit(dens_c, j);
    if (!dens_csv.empty()) {
      std::ofstream csv(dens_csv);
      if (!csv) throw input_error("cannot write '" + dens_csv + "'");
      csv << "rho,f,g,r,class\n";
      for (const PrimeRow& row : rep.rows) {
        std::string cls = row.cls != SpecialClass::NOT_SPECIAL
                              ? class_name(row.cls)
                              : (row.easy ? "easy" : "hard");
        csv << row.rho << ',' << row.f << ',' << row.g << ',' << row.r
            << ',' << cls << '\n';
      }
    }
  });

  // ---- verify ----
  auto* cv = app.add_subcommand("verify", "run an invariant battery");
  static Common ver_c;
  static std::string ver_suite, ver_inject;
  cv->add_option("--suite", ver_suite,
                 "ffpoly|trace|ideal|reduce|modlat|density|all")
      ->required();
  cv->add_option("--inject-fault", ver_inject,
                 "seed a deliberate bug (gram-symmetry)");
  add_common(cv, ver_c, false);
  cv->callback([&] {
    std::vector<CheckResult> rs = run_verify_suite(ver_suite, ver_inject);
    Json j;
    j["suite"] = ver_suite;
    Json checks = Json::array();
    for (const CheckResult& r : rs) {
      Json c;
      c["suite"] = r.suite;
      c["name"] = r.name;
      c["pass"] = r.pass;
      c["detail"] = r.detail;
      checks.push_back(c);
    }
    j["checks"] = checks;
    j["passed"] = all_passed(rs);
    emit(ver_c, j);
    if (!all_passed(rs)) exit_code = 1;
  });

  // ---- bench ----
  auto* cb = app.add_subcommand("bench",
                                "time fixed instances (timings on stderr)");
  static Common bench_c;
  add_common(cb, bench_c, false);
  cb->callback([&] {
    Json list = Json::array();
    auto record = [&](const std::string& name,
                      const std::function<std::string()>& body) {
      Stopwatch sw;
      std::string note = body();
      double secs = sw.seconds();
      std::cerr << name << ": " << secs * 1000.0 << " ms\n";
      Json e;
      e["name"] = name;
      e["result"] = note;
      list.push_back(e);
    };
    record("factor-48-5", [] {
      FactorSet fs = factor_cyclotomic_mod_p(48, 5);
      return std::to_string(fs.count) + " factors of degree " +
             std::to_string(fs.common_degree);
    });
    record("svp-ideal-32-17", [] {
      FieldPtr F = CycloField::make(32);
      FactorSet fs = factor_cyclotomic_mod_p(32, 17);
      IdealSvpResult r = prime_ideal_svp(prime_ideal(F, 17, fs.factors[0]));
      return "sq_length " + r.sq_length.get_str() + " at dim " +
             std::to_string(r.dim_enumerated);
    });
    record("svp-ideal-48-5", [] {
      FieldPtr F = CycloField::make(48);
      FactorSet fs = factor_cyclotomic_mod_p(48, 5);
      IdealSvpResult r = prime_ideal_svp(prime_ideal(F, 5, fs.factors[0]));
      return "sq_length " + r.sq_length.get_str() + " at dim " +
             std::to_string(r.dim_enumerated);
    });
    record("density-16-1e4", [] {
      FieldPtr F = CycloField::make(16);
      DensityReport rep = scan_primes(F, 10000);
      return std::to_string(rep.total_ideals) + " ideals";
    });
    Json j;
    j["benchmarks"] = list;
    emit(bench_c, j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return exit_code;
}

} // namespace

int main(int argc, char** argv)
{
  try {
    return run_cli(argc, argv);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
