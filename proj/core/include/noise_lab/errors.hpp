// Copyright 2026 The Noise Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISE_LAB_ERRORS_HPP_
#define NOISE_LAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace noise_lab {

// Malformed arguments: wrong table sizes, dimension mismatches, parameters
// outside their documented ranges.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation needs an explicit (enumerable) representation but was given a
// procedural one.
class UnsupportedRepresentation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The request would exceed the dense-table or state-space budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace noise_lab

#endif  // NOISE_LAB_ERRORS_HPP_
