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
#ifndef CYCLORED_ERRORS_HPP
#define CYCLORED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cyclored {

// Bad arguments or malformed input data.  CLI exit code 2.
struct input_error : std::invalid_argument {
  explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A mathematical invariant that should always hold failed at runtime.
// CLI exit code 1.
struct invariant_error : std::logic_error {
  explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

// A configured resource cap (dimension, time, memory) was exceeded.
// CLI exit code 3.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cyclored

#endif
