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
#include "cyclored/density.hpp"
#include "cyclored/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace cyclored {

unsigned resolve_threads(unsigned requested)
{
  if (requested != 0) return requested;
  if (const char* env = std::getenv("CYCLORED_THREADS")) {
    long v = std::atol(env);
    if (v >= 1 && v <= 256) return (unsigned)v;
  }
  return 1;
}

namespace {

constexpr u64 kMaxScanBound = 100000000; // sieve stays desk-sized

struct Partial {
  u64 total = 0, split = 0, easy = 0, special = 0, ramified = 0;
  std::vector<PrimeRow> rows;
};

Partial scan_chunk(const FieldPtr& F, u64 M, const std::vector<u64>& primes,
                   size_t lo, size_t hi)
{
  Partial part;
  for (size_t i = lo; i < hi; i++) {
    u64 rho = primes[i];
    if (F->N % rho == 0) {
      part.ramified++;
      continue;
    }
    u64 f = multiplicative_order(rho, F->N);
    if (int_pow(Int(rho), f) >= M) continue;
    PrimeRow row;
    row.rho = rho;
    row.f = f;
    row.g = F->degree / f;
    ReductionPlan plan = subfield_level(F, rho);
    row.r = plan.r;
    row.easy = plan.r < F->n;
    row.cls = special_prime_class(rho, F).cls;
    part.total += row.g;
    if (f == 1) part.split += row.g;
    if (row.easy) part.easy += row.g;
    if (row.cls != SpecialClass::NOT_SPECIAL) part.special += row.g;
    part.rows.push_back(row);
  }
  return part;
}

} // namespace

DensityReport scan_primes(const FieldPtr& F, u64 M, unsigned threads)
{
  if (!F) throw input_error("scan needs a field");
  if (M < 2) throw input_error("norm bound must be at least 2");
  if (M > kMaxScanBound)
    throw resource_error("norm bound too large for exhaustive iteration");

  std::vector<u64> primes = primes_below(M);
  unsigned T = resolve_threads(threads);
  if ((size_t)T > primes.size() && !primes.empty()) T = (unsigned)primes.size();
  if (T == 0) T = 1;

  std::vector<Partial> parts(T);
  if (T == 1) {
    parts[0] = scan_chunk(F, M, primes, 0, primes.size());
  } else {
    std::vector<std::thread> workers;
    size_t chunk = (primes.size() + T - 1) / T;
    for (unsigned w = 0; w < T; w++) {
      size_t lo = std::min((size_t)w * chunk, primes.size());
      size_t hi = std::min(lo + chunk, primes.size());
      workers.emplace_back([&, w, lo, hi] {
        parts[w] = scan_chunk(F, M, primes, lo, hi);
      });
    }
    for (std::thread& th : workers) th.join();
  }

  DensityReport rep;
  rep.N = F->N;
  rep.q_base = F->q_base;
  rep.bound = M;
  for (const Partial& p : parts) {
    rep.total_ideals += p.total;
    rep.split_ideals += p.split;
    rep.easy_ideals += p.easy;
    rep.special_ideals += p.special;
    rep.ramified_primes += p.ramified;
    rep.rows.insert(rep.rows.end(), p.rows.begin(), p.rows.end());
  }

  if (rep.total_ideals > 0) {
    rep.easy_density = Rat(rep.easy_ideals, rep.total_ideals);
    rep.easy_density.canonicalize();
    rep.split_density = Rat(rep.split_ideals, rep.total_ideals);
    rep.split_density.canonicalize();
  }

  u64 phi_s = euler_phi_u64(F->s);
  Rat base = (F->q_base == 2) ? Rat(2) : Rat(F->q_base);
  Rat tail = rat_pow(base, (long)F->n - 1);
  rep.alpha = (F->q_base == 2) ? Rat(phi_s) * tail
                               : Rat(phi_s * (F->q_base - 1)) * tail;
  rep.bound_value = mpq_get_d(rep.alpha.get_mpq_t()) * std::log((double)M) /
                    std::sqrt((double)M);

  // The counting bound, checked exactly: easy^2 <= alpha^2 * M.
  Rat lhs = Rat(rep.easy_ideals) * Rat(rep.easy_ideals);
  Rat rhs = rep.alpha * rep.alpha * Rat(M);
  if (lhs > rhs)
    throw invariant_error("easy-ideal count exceeded the counting bound");
  return rep;
}

double chebotarev_reference(const CycloField& F, u64 M)
{
  if (M < 3) throw input_error("reference needs a bound of at least 3");
  return (double)M / ((double)F.degree * std::log((double)M));
}

Rat compound_probability(const Rat& P, const std::vector<u64>& factor_counts)
{
  if (P < 0 || P > 1) throw input_error("probability outside [0,1]");
  Int e = 1;
  for (u64 g : factor_counts) {
    if (g == 0) throw input_error("factor counts must be positive");
    e *= g;
  }
  if (e > 1048576) throw resource_error("compound exponent too large");
  return rat_pow(P, e.get_si());
}

} // namespace cyclored
