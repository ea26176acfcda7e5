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

#ifndef DIM_STATE_HPP_
#define DIM_STATE_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dim {

// Upper bound on the number of players; 2^N tables must fit in memory.
inline constexpr int kMaxPlayers = 24;

using StateIndex = std::uint32_t;

// Number of states 2^n. Throws ResourceError when n is outside [1, kMaxPlayers].
std::size_t state_count(int n_players);

// Throws ResourceError / DimensionError for an unusable player count.
void check_player_count(int n_players);

// One joint assignment of private bits. Bit i of `bits` is set iff player i+1 holds +1.
class SpinState {
 public:
  SpinState(int n_players, StateIndex bits);

  // From spins in {+1, -1}, player 1 first.
  static SpinState from_spins(std::span<const int> spins);

  int n_players() const { return n_players_; }
  StateIndex bits() const { return bits_; }

  // Spin of player `player` (0-based): +1 or -1.
  int spin(int player) const { return (bits_ >> player) & 1u ? 1 : -1; }

  // Number of players holding +1.
  int popcount() const { return std::popcount(bits_); }

  // Sum of all spins, in [-N, N].
  int magnetization() const { return 2 * popcount() - n_players_; }

  std::vector<int> spins() const;

  // "+-+" style, player 1 first.
  std::string str() const;

  friend bool operator==(const SpinState&, const SpinState&) = default;

 private:
  int n_players_;
  StateIndex bits_;
};

inline int spin_of(StateIndex bits, int player) { return (bits >> player) & 1u ? 1 : -1; }

}  // namespace dim

#endif  // DIM_STATE_HPP_
