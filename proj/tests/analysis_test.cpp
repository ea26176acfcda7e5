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

#include "dim/analysis.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bitset>
#include <numeric>

#include "dim/engine.hpp"
#include "dim/errors.hpp"
#include "dim/random.hpp"
#include "dim/walsh.hpp"
#include "support/brute_force.hpp"

namespace dim {
namespace {

using testing::Spins;

const Security kXor = Security::parity(2, 1, 0b11);

// +1 iff sum w_i sigma_i >= theta, evaluated directly.
bool reproduces(const ThresholdForm& f, const Security& g) {
  const int n = g.n_players();
  for (StateIndex b = 0; b < (1u << n); ++b) {
    Rational sum = -f.threshold;
    for (int i = 0; i < n; ++i) sum += f.weights[i] * Rational(spin_of(b, i));
    if (sum.abs() < Rational(1)) return false;
    if ((sum.sign() > 0 ? 1 : -1) != g.payoff_bits(b)) return false;
  }
  return true;
}

TEST(SymmetryTest, Examples) {
  EXPECT_EQ(is_totally_symmetric(kXor), (std::vector<int>{1, -1, 1}));
  EXPECT_FALSE(is_totally_symmetric(Security::dictator(2, 0)));
  EXPECT_EQ(is_totally_symmetric(Security::majority(3)), (std::vector<int>{-1, -1, 1, 1}));
}

TEST(SymmetryTest, LevelRoundTrip) {
  gen::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const auto levels = gen::random_levels(n, rng);
    EXPECT_EQ(is_totally_symmetric(Security::symmetric(levels).to_table()), levels);
  }
}

TEST(WalshTest, MajoritySpectrumMatchesBruteForce) {
  const auto coef = walsh_spectrum(Security::majority(3));
  for (StateIndex mask = 0; mask < 8; ++mask) {
    const Rational expected = testing::expectation(
        3,
        [mask](const Spins& v) {
          int chi = testing::majority(v);
          for (int i = 0; i < 3; ++i) {
            if ((mask >> i) & 1u) chi *= v[i];
          }
          return Rational(chi);
        },
        testing::uniform_mass(3));
    EXPECT_EQ(coef[mask], expected) << "mask " << mask;
  }
  // Singletons carry 1/2 each and the full mask -1/2.
  EXPECT_EQ(coef[0b001], Rational(1, 2));
  EXPECT_EQ(coef[0b111], Rational(-1, 2));
  EXPECT_EQ(std::count_if(coef.begin(), coef.end(), [](const Rational& c) { return !c.is_zero(); }), 4);
}

TEST(WalshTest, ButterflyMatchesDefinition) {
  gen::Rng rng(5);
  std::vector<std::int64_t> v(16);
  for (auto& x : v) x = gen::uniform_int(rng, -50, 50);
  auto fast = v;
  fwht_inplace(fast);
  for (std::size_t s = 0; s < v.size(); ++s) {
    std::int64_t sum = 0;
    for (std::size_t b = 0; b < v.size(); ++b) sum += (std::popcount(s & b) % 2 ? -1 : 1) * v[b];
    EXPECT_EQ(fast[s], sum);
  }
}

TEST(ParityTest, Examples) {
  EXPECT_EQ(parity_decompose(Security::table(2, {1, -1, -1, 1})), (ParityForm{1, 0b11}));
  EXPECT_EQ(parity_decompose(Security::constant(3, -1)), (ParityForm{-1, 0}));
  EXPECT_FALSE(parity_decompose(Security::majority(3)));
}

TEST(ParityTest, RoundTripAllMasks) {
  for (int n = 1; n <= 10; ++n) {
    for (const Security& g : gen::all_parities(n)) {
      const auto& f = std::get<ParityForm>(g.form());
      ASSERT_EQ(parity_decompose(g.to_table()), f) << "n=" << n << " mask=" << f.mask;
    }
  }
}

TEST(ThresholdTest, Examples) {
  const auto maj = recognize_threshold(Security::majority(3));
  ASSERT_TRUE(maj);
  EXPECT_TRUE(reproduces(*maj, Security::majority(3)));
  EXPECT_FALSE(recognize_threshold(kXor));
  for (int n = 1; n <= 5; ++n) {
    const auto dict = recognize_threshold(Security::dictator(n, 0));
    ASSERT_TRUE(dict);
    EXPECT_TRUE(reproduces(*dict, Security::dictator(n, 0)));
  }
  EXPECT_THROW(recognize_threshold(Security::majority(13)), ResourceError);
}

TEST(ThresholdTest, RandomThresholdsAreRecognized) {
  gen::Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 8;
    const Security g = gen::random_threshold(n, rng);
    const auto w = recognize_threshold(g.to_table());
    ASSERT_TRUE(w);
    ASSERT_TRUE(reproduces(*w, g));
  }
}

TEST(ThresholdTest, ParitiesOfDegreeTwoOrMoreAreNot) {
  for (int n = 2; n <= 6; ++n) {
    for (const Security& g : gen::all_parities(n)) {
      const auto& f = std::get<ParityForm>(g.form());
      EXPECT_EQ(recognize_threshold(g).has_value(), std::popcount(f.mask) <= 1);
    }
  }
}

// Every function realizable by integer weights |w_i| <= 16, |theta| <= 64, by enumeration.
std::vector<bool> brute_force_thresholds(int n) {
  const std::uint32_t states = 1u << n;
  std::vector<bool> seen(std::size_t{1} << states);
  std::vector<int> w(n, -16);
  std::vector<std::pair<int, StateIndex>> sums(states);
  while (true) {
    for (StateIndex b = 0; b < states; ++b) {
      int s = 0;
      for (int i = 0; i < n; ++i) s += spin_of(b, i) * w[i];
      sums[b] = {s, b};
    }
    std::sort(sums.begin(), sums.end());
    // Integer sums, so theta equal to a sum (or above the max) realizes every cut.
    std::uint32_t table = (1u << states) - 1;  // theta <= min: all +1
    seen[table] = true;
    for (std::uint32_t k = 0; k < states; ++k) {
      table &= ~(1u << sums[k].second);
      if (k + 1 == states || sums[k + 1].first != sums[k].first) seen[table] = true;
    }
    int i = 0;
    while (i < n && w[i] == 16) w[i++] = -16;
    if (i == n) break;
    ++w[i];
  }
  return seen;
}

Security from_bits(int n, std::uint32_t table) {
  std::vector<std::int8_t> values(1u << n);
  for (StateIndex b = 0; b < values.size(); ++b) values[b] = (table >> b) & 1u ? 1 : -1;
  return Security::table(n, values);
}

TEST(ThresholdTest, LpAgreesWithEnumerationUpToThreePlayers) {
  for (int n = 1; n <= 3; ++n) {
    const auto seen = brute_force_thresholds(n);
    for (std::uint32_t table = 0; table < seen.size(); ++table) {
      const Security g = from_bits(n, table);
      const auto w = recognize_threshold(g);
      ASSERT_EQ(w.has_value(), static_cast<bool>(seen[table])) << "n=" << n << " table=" << table;
      if (w) ASSERT_TRUE(reproduces(*w, g));
    }
  }
}

TEST(ThresholdTest, LpAgreesWithEnumerationFourPlayers) {
  const auto seen = brute_force_thresholds(4);
  EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 1882);
  for (std::uint32_t table = 0; table < seen.size(); ++table) {
    const Security g = from_bits(4, table);
    const auto w = recognize_threshold(g);
    ASSERT_EQ(w.has_value(), static_cast<bool>(seen[table])) << "table=" << table;
    if (w) ASSERT_TRUE(reproduces(*w, g));
  }
}

TEST(Gamma0Test, Examples) {
  EXPECT_EQ(gamma0(kXor, Prior::uniform(2)).covariance_gap, Rational(0));

  const Rational m(1, 2);
  const Gamma0 biased = gamma0(kXor, Prior::from_magnetization(2, m));
  EXPECT_EQ(biased.covariance_gap, m * (Rational(1) - m * m));
  EXPECT_EQ(biased.covariance_gap, Rational(3, 8));
  const auto mass = testing::biased_mass(Rational(3, 4));
  const auto e = [&](auto f) { return testing::expectation(2, f, mass); };
  EXPECT_EQ(biased.covariance_gap,
            e([](const Spins& v) { return Rational(v[0] * v[1] * v[0]); }) -
                e([](const Spins& v) { return Rational(v[0] * v[1]); }) *
                    e([](const Spins& v) { return Rational(v[0]); }));
  EXPECT_EQ(biased.gamma0, Rational(1, 2));

  const Gamma0 maj = gamma0(Security::majority(3), Prior::uniform(3));
  EXPECT_EQ(maj.covariance_gap, Rational(1, 2));
  EXPECT_EQ(maj.gamma0, Rational(1, 2));
  EXPECT_EQ(maj.beta0, Rational(0));
}

TEST(Gamma0Test, PlayerDependenceIsReported) {
  EXPECT_THROW(gamma0(Security::dictator(2, 0), Prior::uniform(2)), ClassificationError);
}

TEST(Gamma0Test, MatchesBruteForceOnSymmetricInputs) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const Security g = gen::random_symmetric(n, rng);
    const Prior p = gen::random_symmetric_prior(n, rng);
    const Gamma0 got = gamma0(g, p);
    for (int i = 0; i < n; ++i) {
      const auto mass = [&](const Spins& v) { return p.mass(SpinState::from_spins(v)); };
      const auto payoff = [&](const Spins& v) { return Rational(g.payoff(SpinState::from_spins(v))); };
      const Rational gs = testing::expectation(
          n, [&](const Spins& v) { return payoff(v) * Rational(v[i]); }, mass);
      const Rational eg = testing::expectation(n, payoff, mass);
      const Rational es = testing::expectation(n, [&](const Spins& v) { return Rational(v[i]); }, mass);
      ASSERT_EQ(got.covariance_gap, gs - eg * es);
    }
  }
}

TEST(PredictTest, Examples) {
  gen::Rng rng(13);
  const StateIndex mask = static_cast<StateIndex>(gen::uniform_int(rng, 1, 15));
  const auto par = predict_round_two(Security::parity(4, 1, mask), Prior::product_biased(4, Rational(2, 3)));
  EXPECT_TRUE(par.converges_by_round_two);
  EXPECT_EQ(par.reason, RoundTwoReason::kSeparableBiasedPrior);

  EXPECT_FALSE(predict_round_two(kXor, Prior::uniform(2)).converges_by_round_two);

  const auto maj = predict_round_two(Security::majority(3), Prior::uniform(3));
  EXPECT_TRUE(maj.converges_by_round_two);
  EXPECT_EQ(maj.reason, RoundTwoReason::kSymmetricNonzeroGamma0);
  EXPECT_EQ(reason_tag(RoundTwoReason::kNone), "none");
}

TEST(PredictTest, PositivePredictionsHoldOnTheEngine) {
  gen::Rng rng(17);
  int positives = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + trial % 6;
    const Security g = trial % 2 ? gen::random_parity(n, rng) : gen::random_symmetric(n, rng);
    const Prior p = trial % 2 ? gen::random_biased_prior(n, rng) : gen::random_symmetric_prior(n, rng);
    if (!predict_round_two(g, p).converges_by_round_two) continue;
    ++positives;
    for (const Trace& t : run_all_states(g, p, default_max_rounds(n))) {
      ASSERT_TRUE(t.converged_to_truth);
      ASSERT_LE(t.equilibrium_round, 2);
    }
  }
  EXPECT_GT(positives, 50);
}

TEST(ClassifyTest, Report) {
  const auto r = classify(Security::majority(3), Prior::uniform(3));
  EXPECT_FALSE(r.parity);
  EXPECT_TRUE(r.symmetric_levels);
  EXPECT_TRUE(r.threshold_checked);
  ASSERT_TRUE(r.threshold_witness);
  EXPECT_TRUE(reproduces(*r.threshold_witness, Security::majority(3)));
  ASSERT_TRUE(r.gamma0);
  EXPECT_TRUE(r.gamma0_error.empty());

  const auto d = classify(Security::dictator(3, 1), Prior::uniform(3));
  EXPECT_FALSE(d.gamma0);
  EXPECT_FALSE(d.gamma0_error.empty());
  EXPECT_EQ(d.parity, (ParityForm{1, 0b010}));

  const auto big = classify(Security::majority(13), Prior::uniform(13));
  EXPECT_FALSE(big.threshold_checked);
  EXPECT_FALSE(big.threshold_witness);
}

}  // namespace
}  // namespace dim
