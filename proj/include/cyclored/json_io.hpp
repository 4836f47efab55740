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
#ifndef CYCLORED_JSON_IO_HPP
#define CYCLORED_JSON_IO_HPP

#include <json.hpp>

#include "cyclored/modlat.hpp"

namespace cyclored {

// Insertion-ordered so emitted documents are byte-stable and re-emitting
// a parsed document reproduces it exactly.
using Json = nlohmann::ordered_json;

// Integers ride as JSON numbers inside the 53-bit safe range and as
// decimal strings beyond it; both forms parse back.
Json int_to_json(const Int& v);
Int json_to_int(const Json& j);

// Rationals are [numerator, denominator] pairs (canonical, den > 0);
// bare integers are accepted on input.
Json rat_to_json(const Rat& r);
Rat json_to_rat(const Json& j);

// Field elements are ascending power-basis coefficient arrays.
Json elt_to_json(const CycloElt& a);
CycloElt elt_from_json(const FieldPtr& F, const Json& j);

// { "conductor": N, "q_base": q } (q_base optional on input).
FieldPtr field_from_json(const Json& j);

// { "conductor", "q_base", "generators": {"rho", "poly"} } for a
// two-generator prime ideal, or { ..., "hnf": [[column]...] }.
Json ideal_to_json(const IdealLattice& I);
IdealLattice ideal_from_json(const Json& j);

// { "conductor", "q_base", "rank", "ambient",
//   "entries": [{"ideal": {...}, "b": [element...]}] }.
Json module_to_json(const PseudoBasisModule& M);
PseudoBasisModule module_from_json(const Json& j);

// Stable serialization: two-space indent plus trailing newline.
std::string dump_canonical(const Json& j);

Json parse_text(const std::string& text);
Json parse_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

} // namespace cyclored

#endif
