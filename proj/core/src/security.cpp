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

#include "dim/security.hpp"

#include <bit>
#include <string>

#include "dim/errors.hpp"

namespace dim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Security Security::parity(int n_players, int sign, StateIndex mask) {
  check_player_count(n_players);
  if (sign != 1 && sign != -1) throw ValidationError("parity sign must be +1 or -1");
  if (mask >= (StateIndex{1} << n_players)) {
    throw ValidationError("parity mask names a player beyond N=" + std::to_string(n_players));
  }
  return Security(n_players, ParityForm{sign, mask});
}

Security Security::symmetric(std::vector<int> levels) {
  if (levels.size() < 2) throw ValidationError("symmetric security needs N+1 >= 2 levels");
  const int n = static_cast<int>(levels.size()) - 1;
  check_player_count(n);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] != 1 && levels[k] != -1) {
      throw ValidationError("symmetric level A_" + std::to_string(k) + " must be +1 or -1");
    }
  }
  return Security(n, SymmetricForm{std::move(levels)});
}

Security Security::threshold(std::vector<Rational> weights, Rational threshold) {
  const int n = static_cast<int>(weights.size());
  check_player_count(n);
  return Security(n, ThresholdForm{std::move(weights), std::move(threshold)});
}

Security Security::table(int n_players, std::vector<std::int8_t> values) {
  const std::size_t size = state_count(n_players);
  if (values.size() != size) {
    throw ValidationError("security table for N=" + std::to_string(n_players) + " needs " +
                          std::to_string(size) + " entries, got " + std::to_string(values.size()));
  }
  for (std::size_t b = 0; b < size; ++b) {
    if (values[b] != 1 && values[b] != -1) {
      throw ValidationError("security table entry " + std::to_string(b) + " must be +1 or -1");
    }
  }
  return Security(n_players, TableForm{std::move(values)});
}

Security Security::constant(int n_players, int value) { return parity(n_players, value, 0); }

Security Security::dictator(int n_players, int player) {
  if (player < 0 || player >= n_players) throw DimensionError("dictator player out of range");
  return parity(n_players, 1, StateIndex{1} << player);
}

Security Security::majority(int n_players) {
  return threshold(std::vector<Rational>(n_players, Rational(1)), Rational(1));
}

int Security::payoff(const SpinState& s) const {
  if (s.n_players() != n_players_) {
    throw DimensionError("state has " + std::to_string(s.n_players()) + " players, security has " +
                         std::to_string(n_players_));
  }
  return payoff_bits(s.bits());
}

int Security::payoff_bits(StateIndex bits) const {
  return std::visit(
      Overloaded{
          [&](const ParityForm& f) {
            // Each selected -1 spin flips the sign.
            const int minus = std::popcount(f.mask & ~bits);
            return (minus & 1) ? -f.sign : f.sign;
          },
          [&](const SymmetricForm& f) { return f.levels[std::popcount(bits)]; },
          [&](const ThresholdForm& f) {
            Rational sum;
            for (int i = 0; i < n_players_; ++i) {
              if (spin_of(bits, i) == 1) {
                sum += f.weights[i];
              } else {
                sum -= f.weights[i];
              }
            }
            return sum >= f.threshold ? 1 : -1;
          },
          [&](const TableForm& f) { return static_cast<int>(f.values[bits]); },
      },
      form_);
}

Rational Security::original_payoff(const SpinState& s) const {
  return payoff(s) == 1 ? Rational(1) : Rational(0);
}

std::vector<std::int8_t> Security::truth_table() const {
  if (const auto* t = std::get_if<TableForm>(&form_)) return t->values;
  const std::size_t size = state_count(n_players_);
  std::vector<std::int8_t> values(size);
  for (std::size_t b = 0; b < size; ++b) {
    values[b] = static_cast<std::int8_t>(payoff_bits(static_cast<StateIndex>(b)));
  }
  return values;
}

Security Security::to_table() const { return Security(n_players_, TableForm{truth_table()}); }

}  // namespace dim
