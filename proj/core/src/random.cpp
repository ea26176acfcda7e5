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

#include "dim/random.hpp"

#include <bit>

namespace dim::gen {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Prior random_full_support_prior(int n_players, Rng& rng) {
  const std::size_t size = state_count(n_players);
  std::vector<std::int64_t> raw(size);
  std::int64_t total = 0;
  for (auto& v : raw) {
    v = uniform_int(rng, 1, 1000);
    total += v;
  }
  std::vector<Rational> masses;
  masses.reserve(size);
  for (auto v : raw) masses.emplace_back(v, total);
  return Prior::table(n_players, std::move(masses));
}

Prior random_symmetric_prior(int n_players, Rng& rng) {
  std::vector<std::int64_t> raw(n_players + 1);
  mpz_class total = 0;
  for (int k = 0; k <= n_players; ++k) {
    raw[k] = uniform_int(rng, 1, 1000);
    total += binomial(n_players, k) * static_cast<long>(raw[k]);
  }
  std::vector<Rational> levels;
  levels.reserve(raw.size());
  for (auto v : raw) levels.emplace_back(mpz_class(static_cast<long>(v)), total);
  return Prior::symmetric_levels(std::move(levels));
}

Prior random_biased_prior(int n_players, Rng& rng) {
  return Prior::product_biased(n_players, Rational(uniform_int(rng, 1, 63), 64));
}

Prior random_prior(int n_players, Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0:
      return random_full_support_prior(n_players, rng);
    case 1:
      return random_symmetric_prior(n_players, rng);
    default:
      return random_biased_prior(n_players, rng);
  }
}

Security random_threshold(int n_players, Rng& rng, int weight_bound, int theta_bound) {
  while (true) {
    std::vector<Rational> weights;
    weights.reserve(n_players);
    for (int i = 0; i < n_players; ++i) weights.emplace_back(uniform_int(rng, -weight_bound, weight_bound));
    Rational theta(uniform_int(rng, -theta_bound, theta_bound));
    auto g = Security::threshold(std::move(weights), std::move(theta));
    const auto table = g.truth_table();
    for (auto v : table) {
      if (v != table.front()) return g;
    }
  }
}

std::vector<int> random_levels(int n_players, Rng& rng) {
  std::vector<int> levels(n_players + 1);
  for (auto& a : levels) a = uniform_int(rng, 0, 1) ? 1 : -1;
  return levels;
}

Security random_symmetric(int n_players, Rng& rng) { return Security::symmetric(random_levels(n_players, rng)); }

Security random_parity(int n_players, Rng& rng) {
  const int sign = uniform_int(rng, 0, 1) ? 1 : -1;
  const auto mask = static_cast<StateIndex>(uniform_int(rng, 0, (1 << n_players) - 1));
  return Security::parity(n_players, sign, mask);
}

Security random_table(int n_players, Rng& rng) {
  std::vector<std::int8_t> values(state_count(n_players));
  for (auto& v : values) v = uniform_int(rng, 0, 1) ? 1 : -1;
  return Security::table(n_players, std::move(values));
}

Security random_security(int n_players, Rng& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return random_table(n_players, rng);
    case 1:
      return random_threshold(n_players, rng);
    case 2:
      return random_parity(n_players, rng);
    default:
      return random_symmetric(n_players, rng);
  }
}

std::vector<Security> all_parities(int n_players) {
  std::vector<Security> out;
  const StateIndex masks = StateIndex{1} << n_players;
  for (int sign : {1, -1}) {
    for (StateIndex mask = 0; mask < masks; ++mask) out.push_back(Security::parity(n_players, sign, mask));
  }
  return out;
}

}  // namespace dim::gen
