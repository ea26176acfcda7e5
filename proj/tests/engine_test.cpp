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

#include "dim/engine.hpp"

#include <gtest/gtest.h>

#include <bit>

#include "dim/errors.hpp"
#include "dim/random.hpp"
#include "dim/verify.hpp"
#include "support/brute_force.hpp"

namespace dim {
namespace {

using testing::Spins;

const Security kXor = Security::parity(2, 1, 0b11);
const Prior kBiased = Prior::product_biased(2, Rational(3, 4));

SpinState state(std::initializer_list<int> spins) { return SpinState::from_spins(std::vector<int>(spins)); }

TEST(ConditionalBidTest, XorUniformAveragesToZero) {
  EXPECT_EQ(conditional_bid(kXor, Prior::uniform(2), Block::all(2), 0, 1), Rational(0));
}

TEST(ConditionalBidTest, BiasedParityRoundZeroBid) {
  // sigma_i * prod_{j != i} tanh(h) with tanh(h) = 2p - 1 = 1/2.
  EXPECT_EQ(conditional_bid(kXor, kBiased, Block::all(2), 0, 1), Rational(1, 2));
  EXPECT_EQ(conditional_bid(kXor, kBiased, Block::all(2), 0, -1), Rational(-1, 2));
}

TEST(ConditionalBidTest, MajorityMatchesBruteForce) {
  const Rational expected = testing::expectation(
      3, [](const Spins& v) { return Rational(testing::majority(v)); }, testing::uniform_mass(3),
      [](const Spins& v) { return v[0] == 1; });
  ASSERT_EQ(expected, Rational(1, 2));
  EXPECT_EQ(conditional_bid(Security::majority(3), Prior::uniform(3), Block::all(3), 0, 1), expected);
}

TEST(ConditionalBidTest, EmptySliceIsPreconditionError) {
  const Block only_plus = Block::from_members(2, std::vector<StateIndex>{0b01, 0b11});
  EXPECT_THROW(conditional_bid(kXor, kBiased, only_plus, 0, -1), PreconditionError);
  EXPECT_THROW(conditional_bid(kXor, kBiased, only_plus, 2, 1), DimensionError);
}

TEST(ClearingPriceTest, BiasedParity) {
  EXPECT_EQ(clearing_price(kXor, kBiased, Block::all(2), state({1, 1})), Rational(1, 2));
  EXPECT_EQ(clearing_price(kXor, kBiased, Block::all(2), state({1, -1})), Rational(0));
}

TEST(ClearingPriceTest, ConstantSecurityPricesAtOne) {
  gen::Rng rng(1);
  const auto one = Security::constant(3, 1);
  const Prior p = gen::random_full_support_prior(3, rng);
  const Block b = Block::from_members(3, std::vector<StateIndex>{1, 4, 6});
  for (StateIndex s : {1u, 4u, 6u}) EXPECT_EQ(clearing_price(one, p, b, SpinState(3, s)), Rational(1));
}

TEST(ClearingPriceTest, StateOutsideBlockIsPreconditionError) {
  const Block b = Block::from_members(2, std::vector<StateIndex>{0});
  EXPECT_THROW(clearing_price(kXor, kBiased, b, state({1, 1})), PreconditionError);
}

TEST(BetaGammaTest, Examples) {
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(beta_gamma(kXor, kBiased, Block::all(2), i), (BetaGamma{Rational(0), Rational(1, 2)}));
    EXPECT_EQ(beta_gamma(kXor, Prior::uniform(2), Block::all(2), i), (BetaGamma{Rational(0), Rational(0)}));
    EXPECT_EQ(beta_gamma(Security::constant(2, 1), kBiased, Block::all(2), i),
              (BetaGamma{Rational(1), Rational(0)}));
  }
}

TEST(BetaGammaTest, OneSidedBlockFallsBackToBlockExpectation) {
  const Block b = Block::from_members(2, std::vector<StateIndex>{0b01, 0b11});
  const BetaGamma bg = beta_gamma(kXor, kBiased, b, 0);
  EXPECT_EQ(bg.gamma, Rational(0));
  EXPECT_EQ(bg.beta, conditional_bid(kXor, kBiased, b, 0, 1));
}

// Affine identity over every nonempty block for N <= 3.
TEST(BetaGammaTest, AffineBidIdentityOverAllBlocks) {
  gen::Rng rng(21);
  for (int n = 1; n <= 3; ++n) {
    const Security g = gen::random_table(n, rng);
    const Prior p = gen::random_full_support_prior(n, rng);
    const std::uint32_t subsets = 1u << (1u << n);
    for (std::uint32_t set = 1; set < subsets; ++set) {
      Block b(n);
      for (StateIndex s = 0; s < (1u << n); ++s) {
        if ((set >> s) & 1u) b.insert(s);
      }
      for (int i = 0; i < n; ++i) {
        bool has_up = false;
        bool has_down = false;
        b.for_each([&](StateIndex s) { (spin_of(s, i) == 1 ? has_up : has_down) = true; });
        const BetaGamma bg = beta_gamma(g, p, b, i);
        if (has_up && has_down) {
          ASSERT_EQ(conditional_bid(g, p, b, i, 1), bg.beta + bg.gamma);
          ASSERT_EQ(conditional_bid(g, p, b, i, -1), bg.beta - bg.gamma);
        } else {
          ASSERT_EQ(bg.gamma, Rational(0));
        }
      }
    }
  }
}

TEST(RefinePartitionTest, BiasedParitySplitsIntoThree) {
  const Partition next = refine_partition(kXor, kBiased, Partition::trivial(2));
  EXPECT_EQ(next.round, 1);
  next.validate();
  ASSERT_EQ(next.blocks.size(), 3u);
  // Groups come out in ascending price: -1/2, 0, 1/2.
  EXPECT_EQ(next.blocks[0].members(), (std::vector<StateIndex>{0b00}));
  EXPECT_EQ(next.blocks[1].members(), (std::vector<StateIndex>{0b01, 0b10}));
  EXPECT_EQ(next.blocks[2].members(), (std::vector<StateIndex>{0b11}));
  EXPECT_EQ(clearing_price(kXor, kBiased, Block::all(2), SpinState(2, 0)), Rational(-1, 2));
}

TEST(RefinePartitionTest, XorUniformIsStationary) {
  const Partition next = refine_partition(kXor, Prior::uniform(2), Partition::trivial(2));
  ASSERT_EQ(next.blocks.size(), 1u);
  EXPECT_EQ(next.blocks[0], Block::all(2));
}

TEST(RefinePartitionTest, MajorityGroupsByMagnetization) {
  const auto g = Security::majority(3);
  const auto p = Prior::uniform(3);
  const Partition next = refine_partition(g, p, Partition::trivial(3));
  ASSERT_EQ(next.blocks.size(), 4u);
  for (const Block& b : next.blocks) {
    const auto members = b.members();
    const int k = std::popcount(members.front());
    for (StateIndex s : members) EXPECT_EQ(std::popcount(s), k);
    // Bids sigma_i / 2 give price (sum sigma) / 6.
    const SpinState s(3, members.front());
    EXPECT_EQ(clearing_price(g, p, Block::all(3), s), Rational(s.magnetization(), 6));
  }
  EXPECT_TRUE(next.refines(Partition::trivial(3)));
}

TEST(RunDynamicsTest, BiasedParityConvergesAtRoundTwo) {
  const Trace t = run_dynamics(kXor, kBiased, state({1, -1}), 16);
  ASSERT_EQ(t.rounds.size(), 2u);
  EXPECT_EQ(t.rounds[0].price, Rational(0));
  EXPECT_EQ(t.rounds[1].price, Rational(-1));
  EXPECT_EQ(t.equilibrium_round, 2);
  EXPECT_TRUE(t.terminated);
  EXPECT_TRUE(t.converged_to_truth);
  EXPECT_EQ(t.rounds[1].block_before, t.rounds[1].block_after);
}

TEST(RunDynamicsTest, XorUniformStallsAtZero) {
  const Trace t = run_dynamics(kXor, Prior::uniform(2), state({1, 1}), 16);
  ASSERT_EQ(t.rounds.size(), 1u);
  EXPECT_EQ(t.rounds[0].price, Rational(0));
  EXPECT_EQ(t.equilibrium_round, 1);
  EXPECT_FALSE(t.converged_to_truth);
}

TEST(RunDynamicsTest, MajorityConvergesAtRoundTwo) {
  const Trace t = run_dynamics(Security::majority(3), Prior::uniform(3), state({1, 1, -1}), 16);
  ASSERT_EQ(t.rounds.size(), 2u);
  EXPECT_EQ(t.rounds[0].price, Rational(1, 6));
  EXPECT_EQ(t.rounds[1].price, Rational(1));
  EXPECT_EQ(t.equilibrium_round, 2);
  EXPECT_TRUE(t.converged_to_truth);
}

TEST(RunDynamicsTest, RoundRecordsHoldTheirInvariants) {
  const Trace t = run_dynamics(Security::majority(3), Prior::uniform(3), state({1, 1, -1}), 16);
  for (const auto& r : t.rounds) {
    Rational sum;
    for (const auto& b : r.bids) sum += b;
    EXPECT_EQ(r.price, sum / Rational(3));
    EXPECT_TRUE(r.block_after.is_subset_of(r.block_before));
  }
}

TEST(RunDynamicsTest, MaxRoundsExhaustedIsReported) {
  const Trace t = run_dynamics(kXor, kBiased, state({1, -1}), 1);
  EXPECT_FALSE(t.terminated);
  EXPECT_EQ(t.equilibrium_round, 0);
  EXPECT_EQ(t.rounds.size(), 1u);
  EXPECT_THROW(run_dynamics(kXor, kBiased, state({1, -1}), 0), PreconditionError);
}

TEST(RunAllStatesTest, Examples) {
  int converged = 0;
  for (const Trace& t : run_all_states(kXor, kBiased, 16)) {
    converged += t.converged_to_truth;
    EXPECT_LE(t.equilibrium_round, 2);
  }
  EXPECT_EQ(converged, 4);

  converged = 0;
  for (const Trace& t : run_all_states(kXor, Prior::uniform(2), 16)) converged += t.converged_to_truth;
  EXPECT_EQ(converged, 0);

  converged = 0;
  for (const Trace& t : run_all_states(Security::majority(3), Prior::uniform(3), 16)) {
    converged += t.converged_to_truth;
    EXPECT_LE(t.equilibrium_round, 3);
  }
  EXPECT_EQ(converged, 8);
}

TEST(RunAllStatesTest, MatchesIndependentSingleStateRuns) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const Security g = gen::random_security(n, rng);
    const Prior p = gen::random_prior(n, rng);
    const auto all = run_all_states(g, p, default_max_rounds(n));
    for (StateIndex s = 0; s < (1u << n); ++s) {
      ASSERT_EQ(all[s], run_dynamics(g, p, SpinState(n, s), default_max_rounds(n)));
    }
  }
}

TEST(RunAllStatesTest, TracesUseTheIndependentBidRoute) {
  gen::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const Security g = gen::random_table(n, rng);
    const Prior p = gen::random_full_support_prior(n, rng);
    for (const Trace& t : run_all_states(g, p, default_max_rounds(n))) {
      for (const auto& r : t.rounds) {
        for (int i = 0; i < n; ++i) {
          ASSERT_EQ(r.bids[i], conditional_bid(g, p, r.block_before, i, t.true_state.spin(i)));
        }
        ASSERT_EQ(r.price, clearing_price(g, p, r.block_before, t.true_state));
      }
    }
  }
}

TEST(EquilibriumTest, ConsensusAndTerminationOnRandomInstances) {
  gen::Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const Security g = gen::random_security(n, rng);
    const Prior p = gen::random_prior(n, rng);
    const auto h = refine_all(g, p, default_max_rounds(n));
    ASSERT_TRUE(h.all_terminated());
    const auto failures = verify::check_equilibrium(g, p, h);
    ASSERT_TRUE(failures.empty()) << failures.front();
  }
}

TEST(StructureTest, PropertiesHoldOnRandomInstances) {
  gen::Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const Security g = gen::random_security(n, rng);
    const Prior p = gen::random_prior(n, rng);
    const auto failures = verify::check_structure(g, p, refine_all(g, p, default_max_rounds(n)));
    ASSERT_TRUE(failures.empty()) << failures.front();
  }
}

TEST(StructureTest, SingleStateDictatorNeedsTwoRounds) {
  // One splitting refinement, then a stationary round.
  const auto h = refine_all(Security::dictator(1, 0), Prior::uniform(1), default_max_rounds(1));
  EXPECT_EQ(h.outcome(0).equilibrium_round, 2);
  EXPECT_EQ(h.outcome(1).equilibrium_round, 2);
  EXPECT_TRUE(verify::check_equilibrium(Security::dictator(1, 0), Prior::uniform(1), h).empty());
}

}  // namespace
}  // namespace dim
