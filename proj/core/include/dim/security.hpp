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

#ifndef DIM_SECURITY_HPP_
#define DIM_SECURITY_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "dim/rational.hpp"
#include "dim/state.hpp"

namespace dim {

// sign * prod_{i in mask} sigma_i. `mask` bit i selects player i+1.
struct ParityForm {
  int sign = 1;
  StateIndex mask = 0;
  friend bool operator==(const ParityForm&, const ParityForm&) = default;
};

// Payoff levels[k] for every state with k players at +1.
struct SymmetricForm {
  std::vector<int> levels;
  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;
};

// +1 exactly when sum_i weights[i] * sigma_i >= threshold.
struct ThresholdForm {
  std::vector<Rational> weights;
  Rational threshold;
  friend bool operator==(const ThresholdForm&, const ThresholdForm&) = default;
};

// values[b] is the payoff of the state with bitmask b.
struct TableForm {
  std::vector<std::int8_t> values;
  friend bool operator==(const TableForm&, const TableForm&) = default;
};

// Boolean payoff g: {+1,-1}^N -> {+1,-1}. Immutable once built.
class Security {
 public:
  using Form = std::variant<ParityForm, SymmetricForm, ThresholdForm, TableForm>;

  static Security parity(int n_players, int sign, StateIndex mask);
  static Security symmetric(std::vector<int> levels);
  static Security threshold(std::vector<Rational> weights, Rational threshold);
  static Security table(int n_players, std::vector<std::int8_t> values);
  static Security constant(int n_players, int value);
  // g = sigma_{player+1}.
  static Security dictator(int n_players, int player);
  // Threshold with unit weights and threshold 1 (N odd gives strict majority).
  static Security majority(int n_players);

  int n_players() const { return n_players_; }
  const Form& form() const { return form_; }

  // g(s) in {+1,-1}. Throws DimensionError on player-count mismatch.
  int payoff(const SpinState& s) const;
  // Unchecked variant for hot loops; `bits` must be < 2^N.
  int payoff_bits(StateIndex bits) const;

  // (1 + g(s)) / 2.
  Rational original_payoff(const SpinState& s) const;

  // Full truth table in bitmask order. Throws ResourceError above the cap.
  std::vector<std::int8_t> truth_table() const;
  Security to_table() const;

  friend bool operator==(const Security&, const Security&) = default;

 private:
  Security(int n_players, Form form) : n_players_(n_players), form_(std::move(form)) {}

  int n_players_;
  Form form_;
};

}  // namespace dim

#endif  // DIM_SECURITY_HPP_
