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

#ifndef DIM_ANALYSIS_HPP_
#define DIM_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dim/prior.hpp"
#include "dim/rational.hpp"
#include "dim/security.hpp"

namespace dim {

// Largest N for which recognize_threshold builds its LP.
inline constexpr int kMaxThresholdPlayers = 12;

// Level vector A_0..A_N if g depends only on the number of +1 players.
std::optional<std::vector<int>> is_totally_symmetric(const Security& g);

// (sign, mask) if g = sign * prod_{i in mask} sigma_i, read off the exact Walsh spectrum.
std::optional<ParityForm> parity_decompose(const Security& g);

// Integer (w, theta) with |sum_i w_i sigma_i - theta| >= 1 and the sign of that gap equal
// to g(sigma) on every state, or nullopt if g is not a weighted threshold function.
// Throws ResourceError above kMaxThresholdPlayers.
std::optional<ThresholdForm> recognize_threshold(const Security& g);

struct Gamma0 {
  // E[g s_i] - E[g] E[s_i] under the prior.
  Rational covariance_gap;
  // Affine bid coefficients on the full state space (round-zero bids beta0 + gamma0 * s_i).
  Rational beta0;
  Rational gamma0;
};

// Throws ClassificationError if any of the quantities differs between players.
Gamma0 gamma0(const Security& g, const Prior& prior);

enum class RoundTwoReason { kNone, kSeparableBiasedPrior, kSymmetricNonzeroGamma0 };

std::string_view reason_tag(RoundTwoReason reason);

struct RoundTwoPrediction {
  bool converges_by_round_two = false;
  RoundTwoReason reason = RoundTwoReason::kNone;
};

// True when a known sufficient condition guarantees c_2 = g(sigma) for every state:
// a separable (parity) security under a uniformly biased product prior with p != 1/2, or a
// totally symmetric security under a totally symmetric prior with nonzero covariance gap.
// False means no such condition applies, not that convergence fails.
RoundTwoPrediction predict_round_two(const Security& g, const Prior& prior);

struct ClassificationReport {
  std::optional<ParityForm> parity;
  std::optional<std::vector<int>> symmetric_levels;
  std::optional<ThresholdForm> threshold_witness;
  bool threshold_checked = false;  // false when N exceeds the LP cap
  std::optional<Gamma0> gamma0;
  std::string gamma0_error;  // set when gamma0 is player-dependent
  RoundTwoPrediction prediction;
};

ClassificationReport classify(const Security& g, const Prior& prior);

}  // namespace dim

#endif  // DIM_ANALYSIS_HPP_
