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

#ifndef DIM_ORACLE_HPP_
#define DIM_ORACLE_HPP_

#include <vector>

#include "dim/prior.hpp"
#include "dim/rational.hpp"
#include "dim/security.hpp"
#include "dim/state.hpp"
#include "dim/trace.hpp"

// Reference implementation of the market dynamics for differential testing.
//
// Carries the external observer's full distribution P_ex(.; sigma) for every
// hypothetical true state, recomputes every clearing price from those arrays
// each round, filters by exact price equality and renormalizes. Cost is
// O(4^N * N) per round; intended for N <= 6. Shares nothing with the engine
// beyond the security and prior types.
namespace dim::oracle {

// P_ex_t(.; sigma) for one true state: 2^N masses in bitmask order.
using DistributionArray = std::vector<Rational>;

// Observer distributions after each round for one true state, round 0 first.
struct NaiveRun {
  Trace trace;
  std::vector<DistributionArray> observer;
};

NaiveRun naive_run_detailed(const Security& g, const Prior& prior, const SpinState& true_state,
                            int max_rounds);

inline Trace naive_run(const Security& g, const Prior& prior, const SpinState& true_state,
                       int max_rounds) {
  return naive_run_detailed(g, prior, true_state, max_rounds).trace;
}

}  // namespace dim::oracle

#endif  // DIM_ORACLE_HPP_
