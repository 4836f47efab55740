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
#ifndef CYCLORED_VERIFY_HPP
#define CYCLORED_VERIFY_HPP

#include <string>
#include <vector>

#include "cyclored/density.hpp"
#include "cyclored/modlat.hpp"

namespace cyclored {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;     // failure reason or brief success note
};

// Runs one invariant battery ("ffpoly", "trace", "ideal", "reduce",
// "modlat", "density") or "all".  `inject` seeds a deliberate bug so
// the negative path is testable; the only recognized value is
// "gram-symmetry", which perturbs a Gram matrix before its symmetry
// check.  Exceptions inside a check mark it failed, never propagate.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const std::string& inject = "");

bool all_passed(const std::vector<CheckResult>& rs);

const std::vector<std::string>& verify_suite_names();

} // namespace cyclored

#endif
