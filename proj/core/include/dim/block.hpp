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

#ifndef DIM_BLOCK_HPP_
#define DIM_BLOCK_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "dim/state.hpp"

namespace dim {

// A set of states, stored as a bitset over the 2^N state indices.
class Block {
 public:
  // The empty block; only useful as a builder starting point.
  explicit Block(int n_players);

  static Block all(int n_players);
  static Block from_members(int n_players, std::span<const StateIndex> members);

  int n_players() const { return n_players_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(StateIndex s) const { return (words_[s >> 6] >> (s & 63)) & 1u; }
  void insert(StateIndex s);

  bool is_subset_of(const Block& other) const;
  bool intersects(const Block& other) const;

  // Ascending state indices.
  std::vector<StateIndex> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<StateIndex>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const Block& a, const Block& b) {
    return a.n_players_ == b.n_players_ && a.words_ == b.words_;
  }

 private:
  int n_players_;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

// Global knowledge state: disjoint blocks covering all 2^N states.
struct Partition {
  int n_players = 1;
  int round = 0;
  std::vector<Block> blocks;

  // The trivial partition {all states} at round 0.
  static Partition trivial(int n_players);

  // Index of the block holding `s`. Throws PreconditionError if none.
  std::size_t block_of(StateIndex s) const;

  // Throws ValidationError unless blocks are nonempty, disjoint and covering.
  void validate() const;

  // Every block of *this is contained in some block of `coarser`.
  bool refines(const Partition& coarser) const;
};

}  // namespace dim

#endif  // DIM_BLOCK_HPP_
