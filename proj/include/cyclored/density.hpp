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
#ifndef CYCLORED_DENSITY_HPP
#define CYCLORED_DENSITY_HPP

#include "cyclored/reduce.hpp"

namespace cyclored {

/* One unramified rational prime contributing ideals of norm < M. */
struct PrimeRow {
  u64 rho = 0;
  u64 f = 0;                   // inertia degree = ord_N(rho)
  u64 g = 0;                   // number of prime ideals above rho
  u64 r = 0;                   // least reducing sublevel
  bool easy = false;           // r < n
  SpecialClass cls = SpecialClass::NOT_SPECIAL;
};

/* Exhaustive census of prime ideals of norm < M, exact counts. */
struct DensityReport {
  u64 N = 0;
  u64 q_base = 0;
  u64 bound = 0;               // M
  u64 total_ideals = 0;        // unramified prime ideals with norm < M
  u64 split_ideals = 0;        // those with f = 1
  u64 easy_ideals = 0;         // those with r < n
  u64 special_ideals = 0;      // conjugation / first-valuation classes
  u64 ramified_primes = 0;     // rational primes dividing N below M
  Rat easy_density;            // easy / total (0 when total = 0)
  Rat split_density;
  Rat alpha;                   // the per-field counting constant
  double bound_value = 0.0;    // alpha * log(M) / sqrt(M), display only
  std::vector<PrimeRow> rows;
};

// Exhaustive scan over rational primes below M; deterministic and
// independent of the worker count (counts merge additively in prime
// order).  threads = 0 resolves CYCLORED_THREADS, defaulting to 1.
// Enforces the counting bound easy_ideals <= alpha * sqrt(M) exactly.
DensityReport scan_primes(const FieldPtr& field, u64 M,
                          unsigned threads = 0);

// Display-only reference value M / (phi(N) * ln M) for the number of
// completely split primes below M.
double chebotarev_reference(const CycloField& F, u64 M);

// P^(prod g_i) as an exact rational.
Rat compound_probability(const Rat& P, const std::vector<u64>& factor_counts);

// Worker-count resolution shared with the CLI: explicit value if
// nonzero, else the CYCLORED_THREADS environment variable, else 1.
unsigned resolve_threads(unsigned requested);

} // namespace cyclored

#endif
