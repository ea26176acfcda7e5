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

#ifndef DIM_RANDOM_HPP_
#define DIM_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "dim/prior.hpp"
#include "dim/security.hpp"

// Seeded instance generators for sweeps and test campaigns. A given seed yields the same
// sequence of instances on a given standard library.
namespace dim::gen {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);

// Masses proportional to independent integers in [1, 1000].
Prior random_full_support_prior(int n_players, Rng& rng);
// Level masses proportional to independent integers in [1, 1000].
Prior random_symmetric_prior(int n_players, Rng& rng);
// ProductBiased with p = k / 64 for a random k in [1, 63].
Prior random_biased_prior(int n_players, Rng& rng);
// One of the three above, uniformly.
Prior random_prior(int n_players, Rng& rng);

// Integer weights in [-weight_bound, weight_bound], theta in [-theta_bound, theta_bound];
// constant functions are rejected and redrawn.
Security random_threshold(int n_players, Rng& rng, int weight_bound = 8, int theta_bound = 8);
std::vector<int> random_levels(int n_players, Rng& rng);
Security random_symmetric(int n_players, Rng& rng);
Security random_parity(int n_players, Rng& rng);
Security random_table(int n_players, Rng& rng);
// Table, threshold, parity or symmetric, uniformly.
Security random_security(int n_players, Rng& rng);

// All 2^{N+1} (sign, mask) parity securities.
std::vector<Security> all_parities(int n_players);

}  // namespace dim::gen

#endif  // DIM_RANDOM_HPP_
