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

#ifndef DIM_LP_HPP_
#define DIM_LP_HPP_

#include <vector>

#include "dim/rational.hpp"

namespace dim::lp {

// maximize c.x  subject to  A x = b,  x >= 0.
struct StandardFormLp {
  std::vector<std::vector<Rational>> a;  // rows
  std::vector<Rational> b;
  std::vector<Rational> c;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  Rational objective;
  std::vector<Rational> x;     // primal point
  std::vector<Rational> duals;  // y with A^T y >= c and b.y = objective (one per input row)
};

// Two-phase dense-tableau simplex in exact arithmetic. Bland's rule for both
// entering and leaving choices, so it cannot cycle.
Solution solve(const StandardFormLp& problem);

}  // namespace dim::lp

#endif  // DIM_LP_HPP_
