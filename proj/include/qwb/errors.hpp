// Copyright 2026 The qwb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWB_ERRORS_HPP_
#define QWB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qwb {

/// Malformed or mismatched input (unknown identifiers, endpoint mismatches,
/// unparsable files).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A stated precondition of an operation does not hold (e.g. Heyting
/// implication on a non-distributive lattice).
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// An enumeration exceeded its configured candidate budget.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Two routes that are provably equal disagreed on an instance. Must never
/// fire on validated inputs; firing indicates a bug, not bad data.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qwb

#endif  // QWB_ERRORS_HPP_
