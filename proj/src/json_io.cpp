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
#include "cyclored/json_io.hpp"
#include "cyclored/errors.hpp"

#include <fstream>

namespace cyclored {

namespace {
const Int kSafeMax = (Int(1) << 53);
}

Json int_to_json(const Int& v)
{
  if (abs(v) <= kSafeMax) return Json(v.get_si());
  return Json(v.get_str());
}

Int json_to_int(const Json& j)
{
  if (j.is_number_integer()) return Int((long)j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Int v;
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
      throw input_error("malformed integer string: '" + s + "'");
    return v;
  }
  throw input_error("expected an integer (number or decimal string)");
}

Json rat_to_json(const Rat& r)
{
  return Json::array({int_to_json(Int(r.get_num())),
                      int_to_json(Int(r.get_den()))});
}

Rat json_to_rat(const Json& j)
{
  if (j.is_array()) {
    if (j.size() != 2)
      throw input_error("rational must be a [numerator, denominator] pair");
    Int num = json_to_int(j[0]), den = json_to_int(j[1]);
    if (den == 0) throw input_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  return Rat(json_to_int(j));
}

Json elt_to_json(const CycloElt& a)
{
  Json out = Json::array();
  for (const Rat& c : a.coeffs) out.push_back(rat_to_json(c));
  return out;
}

CycloElt elt_from_json(const FieldPtr& F, const Json& j)
{
  if (!j.is_array() || j.size() != F->degree)
    throw input_error("element must list phi(N) coefficients");
  std::vector<Rat> coeffs;
  for (const Json& c : j) coeffs.push_back(json_to_rat(c));
  return CycloElt(F, std::move(coeffs));
}

FieldPtr field_from_json(const Json& j)
{
  if (!j.is_object() || !j.contains("conductor"))
    throw input_error("missing 'conductor'");
  Int N = json_to_int(j.at("conductor"));
  if (N < 1 || !N.fits_ulong_p()) throw input_error("conductor out of range");
  if (j.contains("q_base")) {
    Int q = json_to_int(j.at("q_base"));
    if (q < 2 || !q.fits_ulong_p()) throw input_error("q_base out of range");
    return CycloField::make(N.get_ui(), q.get_ui());
  }
  return CycloField::make(N.get_ui());
}

Json ideal_to_json(const IdealLattice& I)
{
  Json out;
  out["conductor"] = Json((long long)I.field->N);
  out["q_base"] = Json((long long)I.field->q_base);
  if (I.generators) {
    Json g;
    g["rho"] = Json((long long)I.generators->first);
    Json poly = Json::array();
    for (u64 c : I.generators->second.c) poly.push_back((long long)c);
    g["poly"] = poly;
    out["generators"] = g;
  } else {
    Json h = Json::array();
    for (const Col& col : I.basis) {
      Json jc = Json::array();
      for (const Int& x : col) jc.push_back(int_to_json(x));
      h.push_back(jc);
    }
    out["hnf"] = h;
  }
  return out;
}

IdealLattice ideal_from_json(const Json& j)
{
  FieldPtr F = field_from_json(j);
  bool has_gen = j.contains("generators"), has_hnf = j.contains("hnf");
  if (has_gen == has_hnf)
    throw input_error("ideal needs exactly one of 'generators' or 'hnf'");
  if (has_gen) {
    const Json& g = j.at("generators");
    if (!g.is_object() || !g.contains("rho") || !g.contains("poly"))
      throw input_error("'generators' needs 'rho' and 'poly'");
    Int rho = json_to_int(g.at("rho"));
    if (rho < 2 || !rho.fits_ulong_p()) throw input_error("bad prime");
    const Json& pj = g.at("poly");
    if (!pj.is_array()) throw input_error("'poly' must be an array");
    std::vector<u64> c;
    for (const Json& x : pj) {
      Int v = json_to_int(x);
      if (v < 0 || !v.fits_ulong_p())
        throw input_error("poly coefficients must be reduced mod rho");
      c.push_back(v.get_ui());
    }
    return prime_ideal(F, rho.get_ui(), FpPoly(rho.get_ui(), std::move(c)));
  }
  const Json& h = j.at("hnf");
  if (!h.is_array() || h.size() != F->degree)
    throw input_error("'hnf' must list phi(N) columns");
  ColMat cols;
  for (const Json& jc : h) {
    if (!jc.is_array() || jc.size() != F->degree)
      throw input_error("'hnf' columns must have phi(N) entries");
    Col col;
    for (const Json& x : jc) col.push_back(json_to_int(x));
    cols.push_back(std::move(col));
  }
  return ideal_from_hnf(F, cols);
}

Json module_to_json(const PseudoBasisModule& M)
{
  Json out;
  out["conductor"] = Json((long long)M.field->N);
  out["q_base"] = Json((long long)M.field->q_base);
  out["rank"] = Json((long long)M.rank);
  out["ambient"] = Json((long long)M.ambient);
  Json entries = Json::array();
  for (const PseudoBasisEntry& e : M.entries) {
    Json je;
    Json ji = ideal_to_json(e.ideal);
    ji.erase("conductor");
    ji.erase("q_base");
    je["ideal"] = ji;
    Json bs = Json::array();
    for (const CycloElt& b : e.b) bs.push_back(elt_to_json(b));
    je["b"] = bs;
    entries.push_back(je);
  }
  out["entries"] = entries;
  return out;
}

PseudoBasisModule module_from_json(const Json& j)
{
  FieldPtr F = field_from_json(j);
  if (!j.contains("rank") || !j.contains("ambient") || !j.contains("entries"))
    throw input_error("module needs 'rank', 'ambient' and 'entries'");
  Int rank = json_to_int(j.at("rank")), ambient = json_to_int(j.at("ambient"));
  if (rank < 1 || ambient < 1 || !rank.fits_ulong_p() ||
      !ambient.fits_ulong_p())
    throw input_error("rank/ambient out of range");
  const Json& ents = j.at("entries");
  if (!ents.is_array() || ents.size() != rank.get_ui())
    throw input_error("'entries' must list 'rank' items");
  std::vector<PseudoBasisEntry> entries;
  for (const Json& je : ents) {
    if (!je.is_object() || !je.contains("ideal") || !je.contains("b"))
      throw input_error("entry needs 'ideal' and 'b'");
    Json ji = je.at("ideal");
    ji["conductor"] = Json((long long)F->N);
    ji["q_base"] = Json((long long)F->q_base);
    PseudoBasisEntry e{ideal_from_json(ji), {}};
    const Json& bs = je.at("b");
    if (!bs.is_array() || bs.size() != ambient.get_ui())
      throw input_error("'b' must list 'ambient' elements");
    for (const Json& bj : bs) e.b.push_back(elt_from_json(F, bj));
    entries.push_back(std::move(e));
  }
  return make_module(F, std::move(entries), ambient.get_ui());
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json parse_text(const std::string& text)
{
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON");
  return j;
}

Json parse_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_text(text);
}

void write_file(const std::string& path, const Json& j)
{
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << dump_canonical(j);
}

} // namespace cyclored
