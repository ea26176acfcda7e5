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

#ifndef DIM_TOOLS_CONFIG_HPP_
#define DIM_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dim/prior.hpp"
#include "dim/random.hpp"
#include "dim/security.hpp"
#include "dim/serialize.hpp"
#include "dim/state.hpp"

namespace dimctl {

inline constexpr const char* kSchema = "dimarket/1";

// Parsed experiment file. Fields a command does not use may be absent.
struct ExperimentConfig {
  std::optional<int> n_players;
  std::optional<dim::io::Json> security;
  std::optional<dim::io::Json> prior;
  std::optional<dim::io::Json> true_state;
  std::optional<int> max_rounds;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> suite;
  std::optional<dim::io::Json> sweep;
};

// Throws ValidationError on a missing or unsupported "schema" and on malformed fields.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const dim::io::Json& j);

dim::Security config_security(const ExperimentConfig& c);
dim::Prior config_prior(const ExperimentConfig& c);
dim::SpinState config_state(const ExperimentConfig& c, int n_players);

// Expanded sweep grid. Generators draw from one RNG in file order: securities, then priors.
struct SweepGrid {
  std::vector<dim::Security> securities;
  std::vector<dim::Prior> priors;
  bool nonzero_gamma0_only = false;
};

SweepGrid expand_sweep(const dim::io::Json& sweep, std::uint64_t seed);

}  // namespace dimctl

#endif  // DIM_TOOLS_CONFIG_HPP_
