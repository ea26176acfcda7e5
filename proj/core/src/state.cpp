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

#include "dim/state.hpp"

#include "dim/errors.hpp"

namespace dim {

void check_player_count(int n_players) {
  if (n_players < 1) {
    throw DimensionError("player count must be at least 1, got " + std::to_string(n_players));
  }
  if (n_players > kMaxPlayers) {
    throw ResourceError("player count " + std::to_string(n_players) + " exceeds cap " +
                        std::to_string(kMaxPlayers));
  }
}

std::size_t state_count(int n_players) {
  check_player_count(n_players);
  return std::size_t{1} << n_players;
}

SpinState::SpinState(int n_players, StateIndex bits) : n_players_(n_players), bits_(bits) {
  check_player_count(n_players);
  if (bits >= (StateIndex{1} << n_players)) {
    throw DimensionError("state bits " + std::to_string(bits) + " out of range for N=" +
                         std::to_string(n_players));
  }
}

SpinState SpinState::from_spins(std::span<const int> spins) {
  StateIndex bits = 0;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] == 1) {
      bits |= StateIndex{1} << i;
    } else if (spins[i] != -1) {
      throw DimensionError("spin values must be +1 or -1");
    }
  }
  return SpinState(static_cast<int>(spins.size()), bits);
}

std::vector<int> SpinState::spins() const {
  std::vector<int> out(n_players_);
  for (int i = 0; i < n_players_; ++i) out[i] = spin(i);
  return out;
}

std::string SpinState::str() const {
  std::string out(n_players_, '-');
  for (int i = 0; i < n_players_; ++i) {
    if (spin(i) == 1) out[i] = '+';
  }
  return out;
}

}  // namespace dim
