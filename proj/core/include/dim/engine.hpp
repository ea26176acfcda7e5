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

#ifndef DIM_ENGINE_HPP_
#define DIM_ENGINE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "dim/block.hpp"
#include "dim/prior.hpp"
#include "dim/rational.hpp"
#include "dim/security.hpp"
#include "dim/state.hpp"
#include "dim/trace.hpp"

namespace dim {

// E[g | sigma_player = spin, state in B] under the prior restricted to B.
// Throws PreconditionError when no state of B has that spin.
Rational conditional_bid(const Security& g, const Prior& prior, const Block& block, int player,
                         int spin);

// (1/N) sum_i conditional_bid(g, P, B, i, s_i). Throws PreconditionError if s is not in B.
Rational clearing_price(const Security& g, const Prior& prior, const Block& block,
                        const SpinState& s);

struct BetaGamma {
  Rational beta;
  Rational gamma;
  friend bool operator==(const BetaGamma&, const BetaGamma&) = default;
};

// Affine decomposition bid(spin) = beta + gamma * spin of a player's conditional bid on B.
// If B holds only one spin value v of the player, returns (bid at v, 0).
BetaGamma beta_gamma(const Security& g, const Prior& prior, const Block& block, int player);

// One round: every block splits by exact clearing price.
Partition refine_partition(const Security& g, const Prior& prior, const Partition& partition);

// Runs the dynamics for one true state from the trivial partition, stopping at the first
// stationary round or after max_rounds.
Trace run_dynamics(const Security& g, const Prior& prior, const SpinState& true_state,
                   int max_rounds);

// Rounds sufficient for any instance to reach its stationary round: 2^N.
int default_max_rounds(int n_players);

// Sub-block of a processed block sharing one clearing price.
struct PriceGroup {
  Rational price;
  std::vector<StateIndex> members;  // ascending
};

// One block as processed in one round.
struct BlockRound {
  std::vector<StateIndex> members;              // ascending
  std::vector<std::optional<Rational>> bid_plus;   // per player; empty slice -> nullopt
  std::vector<std::optional<Rational>> bid_minus;
  std::vector<PriceGroup> groups;  // ascending price

  bool stationary() const { return groups.size() == 1; }
};

// Per-state summary read off a refinement history.
struct StateOutcome {
  int equilibrium_round = 0;
  bool terminated = false;
  Rational final_price;
  bool converged_to_truth = false;
  // First round with c_t = g(s); 0 if never.
  int first_truth_round = 0;
};

// The shared global refinement sequence for every true state at once.
class RefinementHistory {
 public:
  int n_players() const { return n_players_; }
  // Rounds actually evaluated.
  int rounds() const { return static_cast<int>(rounds_.size()); }
  bool all_terminated() const;

  // Blocks processed in round t (1-based). Stationary blocks drop out of later rounds.
  const std::vector<BlockRound>& round_blocks(int t) const { return rounds_.at(t - 1); }

  // The block and price group of `s` in round t, if s was still active then.
  std::optional<std::pair<const BlockRound*, const PriceGroup*>> step(StateIndex s, int t) const;

  Trace trace(StateIndex s) const;
  StateOutcome outcome(StateIndex s) const;

 private:
  friend RefinementHistory refine_all(const Security&, const Prior&, int);

  struct Step {
    std::uint32_t block;
    std::uint32_t group;
  };

  int n_players_ = 1;
  std::vector<std::int8_t> payoff_;
  std::vector<std::vector<BlockRound>> rounds_;
  std::vector<std::vector<Step>> path_;  // path_[s][t-1]
  std::vector<int> equilibrium_round_;   // 0 = not terminated
};

// Global refinement from the trivial partition until every block is stationary or
// max_rounds rounds have run.
RefinementHistory refine_all(const Security& g, const Prior& prior, int max_rounds);

// One trace per true state, indexed by state bitmask; identical to calling run_dynamics
// for each state.
std::vector<Trace> run_all_states(const Security& g, const Prior& prior, int max_rounds);

}  // namespace dim

#endif  // DIM_ENGINE_HPP_
