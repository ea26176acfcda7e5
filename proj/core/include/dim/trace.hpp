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

#ifndef DIM_TRACE_HPP_
#define DIM_TRACE_HPP_

#include <vector>

#include "dim/block.hpp"
#include "dim/rational.hpp"
#include "dim/state.hpp"

namespace dim {

// One announce/update round as seen from a fixed true state.
struct RoundRecord {
  int round = 1;
  Block block_before;          // S^{t-1} class of the true state
  std::vector<Rational> bids;  // b_{i,t-1}, player 1 first
  Rational price;              // c_t
  Block block_after;           // S^t class of the true state

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct Trace {
  SpinState true_state;
  std::vector<RoundRecord> rounds;
  // First round whose block_after equals block_before; 0 when max_rounds ran out first.
  int equilibrium_round = 0;
  bool terminated = false;
  Rational final_price;
  bool converged_to_truth = false;

  friend bool operator==(const Trace&, const Trace&) = default;
};

}  // namespace dim

#endif  // DIM_TRACE_HPP_
