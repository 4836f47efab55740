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
#ifndef CYCLORED_MODLAT_HPP
#define CYCLORED_MODLAT_HPP

#include "cyclored/reduce.hpp"

namespace cyclored {

/* A module over Z[zeta_N] in pseudo-basis form, M = (+)_k I_k b_k with
 * b_k in L^D linearly independent over L.  As a Z-lattice it has rank
 * d * phi(N) under the trace form. */
struct PseudoBasisEntry {
  IdealLattice ideal;
  std::vector<CycloElt> b;     // length = ambient dimension
};

struct PseudoBasisModule {
  FieldPtr field;
  size_t rank = 0;             // d
  size_t ambient = 0;          // D
  std::vector<PseudoBasisEntry> entries;
};

// Validates shapes and L-linear independence (det of the d x d Gram
// over L must be nonzero).
PseudoBasisModule make_module(FieldPtr field,
                              std::vector<PseudoBasisEntry> entries,
                              size_t ambient);

// Vol(M) = |disc|^d * Norm(det(B^dagger B)) * prod Norm(I_k)^2; equals
// the Gram determinant of any Z-basis of M (squared covolume).
Rat module_volume(const PseudoBasisModule& M);

// All automorphism indices i with sigma_i(I_k b_k) = I_k b_k, decided
// exactly via the proportionality ratio and an HNF lattice equality.
std::vector<u64> pseudo_ideal_stabilizer(const PseudoBasisEntry& entry);

// Least sublevel j whose Galois subgroup { i = 1 mod s q^(j+1) } is
// contained in the given stabilizer.
u64 stabilizer_sublevel(const CycloField& F, const std::vector<u64>& stab);

struct ModuleEntryReduction {
  std::vector<u64> stabilizer;
  u64 sublevel = 0;            // j_k: sublevel covering the fixed field
  CycloElt alpha;              // b_k = alpha * b'_k
  std::vector<CycloElt> b_prime;
  Int Q;                       // least positive integer making J integral
  IdealLattice J;              // Q * alpha * I_k
  IdealLattice c;              // J intersect O_K at sublevel rbar
  u64 rbar = 0;                // least sublevel whose shifts tile J
};

struct ModuleReduction {
  FieldPtr field;
  std::vector<ModuleEntryReduction> entries;
  u64 compositum = 0;          // t = max_k sublevel_k
  u64 common_level = 0;        // T = max(t, max_k rbar_k)
  bool degraded = false;       // T = n: no compression available
};

ModuleReduction module_reduce(const PseudoBasisModule& M);

struct ModuleSvpResult {
  std::vector<CycloElt> vec;   // winner, a length-D vector in M
  Rat sq_length;               // sum_t Trace(v_t * conj(v_t)), exact
  size_t dim_enumerated = 0;
  u64 common_level = 0;
  u64 compositum = 0;
  std::vector<u64> rbar;
  // The per-entry-level sublattice can in principle miss the minimum
  // when entries reduce to different sublevels; the common-level
  // enumeration then supplies the answer and this flag is set.
  bool used_fallback = false;
  bool degraded = false;
};

ModuleSvpResult module_svp(const PseudoBasisModule& M,
                           size_t dim_cap = kDefaultEnumDimCap);

// Volume of the reduced module (+)_k (1/Q_k) c_k b'_k by the subfield
// counterpart of the volume formula, with c_k taken at sublevel j_k and
// the compositum as base field.
Rat reduced_module_volume(const PseudoBasisModule& M,
                          const ModuleReduction& red);

// Hermite factor carried from the reduced module back to M; out_pow
// holds gamma_out^(2 d [L:Q]) exactly.
HermiteLift module_hermite_factor(const PseudoBasisModule& M,
                                  const ModuleReduction& red,
                                  const Rat& gamma);

// Exact test ||v|| <= f * vol^(1/2R) given sq = ||v||^2, the squared
// covolume, the Z-rank R and pow2R = f^(2R).
bool hermite_pow_satisfies(const Rat& sq, const Rat& vol, u64 rank,
                           const Rat& pow2R);

} // namespace cyclored

#endif
