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

#ifndef DIM_VERIFY_HPP_
#define DIM_VERIFY_HPP_

#include <cstdint>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dim/engine.hpp"
#include "dim/prior.hpp"
#include "dim/security.hpp"

// Acceptance suites A1..A9 and the exact checkers they are built from.
namespace dim::verify {

struct SuiteReport {
  std::string id;
  std::string title;
  std::size_t cases = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few messages only
  std::string note;
  double seconds = 0.0;

  bool passed() const { return cases > 0 && failed == 0; }
};

// Collects equilibrium checks across suites so A5 can cover every run made by A1..A4.
class EquilibriumTally {
 public:
  void record(std::string_view source, const std::vector<std::string>& failures);
  bool covers(std::string_view source) const;
  std::size_t runs() const;
  std::size_t violations() const;
  std::vector<std::string> messages() const;

 private:
  mutable std::mutex mutex_;
  std::set<std::string, std::less<>> sources_;
  std::size_t runs_ = 0;
  std::size_t violations_ = 0;
  std::vector<std::string> messages_;
};

struct SuiteOptions {
  std::uint64_t seed = 20240517;
  unsigned jobs = 1;
  EquilibriumTally* tally = nullptr;
};

const std::vector<std::string>& suite_ids();
std::string_view suite_title(std::string_view id);

// Throws std::invalid_argument for an unknown id.
SuiteReport run_suite(std::string_view id, const SuiteOptions& options = {});

// Common-knowledge equilibrium checks on a finished refinement: every state terminated,
// at most 2^N - 1 splitting rounds, and at each stationary block every player's
// conditional bid (recomputed independently) equals the clearing price.
std::vector<std::string> check_equilibrium(const Security& g, const Prior& prior,
                                           const RefinementHistory& history);

// Structural invariants of a refinement: per-round partitions are disjoint covers that
// refine their predecessors, the true state stays in its block, bids follow the affine
// decomposition, prices average the bids and stay in [-1, 1], and final blocks coincide
// with price-history classes.
std::vector<std::string> check_structure(const Security& g, const Prior& prior,
                                         const RefinementHistory& history);

}  // namespace dim::verify

#endif  // DIM_VERIFY_HPP_
