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

#include "dim/block.hpp"

#include <string>

#include "dim/errors.hpp"

namespace dim {

Block::Block(int n_players)
    : n_players_(n_players), words_((state_count(n_players) + 63) / 64, 0) {}

Block Block::all(int n_players) {
  Block b(n_players);
  const std::size_t size = state_count(n_players);
  for (std::size_t w = 0; w < b.words_.size(); ++w) {
    const std::size_t lo = w * 64;
    const std::size_t span = size - lo < 64 ? size - lo : 64;
    b.words_[w] = span == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << span) - 1);
  }
  b.count_ = size;
  return b;
}

Block Block::from_members(int n_players, std::span<const StateIndex> members) {
  Block b(n_players);
  for (StateIndex s : members) b.insert(s);
  return b;
}

void Block::insert(StateIndex s) {
  if (s >= state_count(n_players_)) {
    throw DimensionError("state " + std::to_string(s) + " outside the state space");
  }
  std::uint64_t& word = words_[s >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (s & 63);
  if ((word & bit) == 0) {
    word |= bit;
    ++count_;
  }
}

bool Block::is_subset_of(const Block& other) const {
  if (other.n_players_ != n_players_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool Block::intersects(const Block& other) const {
  if (other.n_players_ != n_players_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

std::vector<StateIndex> Block::members() const {
  std::vector<StateIndex> out;
  out.reserve(count_);
  for_each([&](StateIndex s) { out.push_back(s); });
  return out;
}

Partition Partition::trivial(int n_players) {
  return Partition{n_players, 0, {Block::all(n_players)}};
}

std::size_t Partition::block_of(StateIndex s) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].contains(s)) return i;
  }
  throw PreconditionError("state " + std::to_string(s) + " is in no block");
}

void Partition::validate() const {
  Block seen(n_players);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.n_players() != n_players) throw ValidationError("block " + std::to_string(i) + " has wrong N");
    if (b.empty()) throw ValidationError("block " + std::to_string(i) + " is empty");
    if (b.intersects(seen)) throw ValidationError("block " + std::to_string(i) + " overlaps another");
    b.for_each([&](StateIndex s) { seen.insert(s); });
  }
  if (seen.size() != state_count(n_players)) throw ValidationError("partition does not cover all states");
}

bool Partition::refines(const Partition& coarser) const {
  for (const Block& b : blocks) {
    const auto members = b.members();
    if (members.empty()) return false;
    const Block& parent = coarser.blocks[coarser.block_of(members.front())];
    if (!b.is_subset_of(parent)) return false;
  }
  return true;
}

}  // namespace dim
