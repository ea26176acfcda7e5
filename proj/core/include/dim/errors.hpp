// Copyright 2026 The dimarket Authors.
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

#ifndef DIM_ERRORS_HPP_
#define DIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dim {

// Mismatched player counts, out-of-range indices.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed securities, priors, configs and serialized documents.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request that would exceed the desk-scale caps (2^N tables, LP size).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (empty conditional slice, state not in block).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Inputs do not belong to the class an analysis requires.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dim

#endif  // DIM_ERRORS_HPP_
