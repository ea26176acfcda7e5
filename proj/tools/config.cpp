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

#include "config.hpp"

#include <fstream>
#include <sstream>

#include "dim/errors.hpp"

namespace dimctl {

using dim::ValidationError;
using dim::io::Json;

namespace {

int int_field(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

int count_field(const Json& j) { return j.contains("count") ? int_field(j, "count") : 1; }

std::vector<dim::Security> generate_securities(const Json& g, dim::gen::Rng& rng) {
  const std::string kind = g.at("generate").get<std::string>();
  const int n = int_field(g, "n_players");
  dim::check_player_count(n);
  const int count = count_field(g);
  std::vector<dim::Security> out;
  if (kind == "all_parities") return dim::gen::all_parities(n);
  for (int k = 0; k < count; ++k) {
    if (kind == "random_parity") {
      out.push_back(dim::gen::random_parity(n, rng));
    } else if (kind == "random_symmetric") {
      out.push_back(dim::gen::random_symmetric(n, rng));
    } else if (kind == "random_threshold") {
      out.push_back(dim::gen::random_threshold(n, rng));
    } else if (kind == "random_table") {
      out.push_back(dim::gen::random_table(n, rng));
    } else {
      throw ValidationError("unknown security generator \"" + kind + "\"");
    }
  }
  return out;
}

std::vector<dim::Prior> generate_priors(const Json& g, dim::gen::Rng& rng) {
  const std::string kind = g.at("generate").get<std::string>();
  const int n = int_field(g, "n_players");
  dim::check_player_count(n);
  const int count = count_field(g);
  std::vector<dim::Prior> out;
  for (int k = 0; k < count; ++k) {
    if (kind == "random_full_support") {
      out.push_back(dim::gen::random_full_support_prior(n, rng));
    } else if (kind == "random_symmetric") {
      out.push_back(dim::gen::random_symmetric_prior(n, rng));
    } else if (kind == "random_biased") {
      out.push_back(dim::gen::random_biased_prior(n, rng));
    } else {
      throw ValidationError("unknown prior generator \"" + kind + "\"");
    }
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (!j.contains("schema")) throw ValidationError("config is missing \"schema\"");
  if (j.at("schema") != Json(kSchema)) {
    throw ValidationError("unsupported schema " + j.at("schema").dump() + ", expected \"" + kSchema + "\"");
  }
  try {
    ExperimentConfig c;
    if (j.contains("n_players")) c.n_players = int_field(j, "n_players");
    if (j.contains("security")) c.security = j.at("security");
    if (j.contains("prior")) c.prior = j.at("prior");
    if (j.contains("true_state")) c.true_state = j.at("true_state");
    if (j.contains("max_rounds")) c.max_rounds = int_field(j, "max_rounds");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
    if (j.contains("sweep")) c.sweep = j.at("sweep");
    return c;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path);
  try {
    return parse_config(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

dim::Security config_security(const ExperimentConfig& c) {
  if (!c.security) throw ValidationError("config is missing \"security\"");
  Json j = *c.security;
  if (c.n_players && j.is_object() && !j.contains("n_players")) j["n_players"] = *c.n_players;
  const dim::Security g = dim::io::security_from_json(j);
  if (c.n_players && g.n_players() != *c.n_players) {
    throw ValidationError("security has " + std::to_string(g.n_players()) + " players, config says " +
                          std::to_string(*c.n_players));
  }
  return g;
}

dim::Prior config_prior(const ExperimentConfig& c) {
  if (!c.prior) throw ValidationError("config is missing \"prior\"");
  Json j = *c.prior;
  if (c.n_players && j.is_object() && !j.contains("n_players")) j["n_players"] = *c.n_players;
  const dim::Prior p = dim::io::prior_from_json(j);
  if (c.n_players && p.n_players() != *c.n_players) {
    throw ValidationError("prior has " + std::to_string(p.n_players()) + " players, config says " +
                          std::to_string(*c.n_players));
  }
  return p;
}

dim::SpinState config_state(const ExperimentConfig& c, int n_players) {
  if (!c.true_state) throw ValidationError("config is missing \"true_state\"");
  return dim::io::state_from_json(*c.true_state, n_players);
}

SweepGrid expand_sweep(const Json& sweep, std::uint64_t seed) {
  if (!sweep.is_object()) throw ValidationError("\"sweep\" must be an object");
  try {
    dim::gen::Rng rng(seed);
    SweepGrid grid;
    for (const auto& s : sweep.at("securities")) {
      if (s.contains("generate")) {
        for (auto& g : generate_securities(s, rng)) grid.securities.push_back(std::move(g));
      } else {
        grid.securities.push_back(dim::io::security_from_json(s));
      }
    }
    for (const auto& p : sweep.at("priors")) {
      if (p.contains("generate")) {
        for (auto& g : generate_priors(p, rng)) grid.priors.push_back(std::move(g));
      } else {
        grid.priors.push_back(dim::io::prior_from_json(p));
      }
    }
    if (sweep.contains("filter")) {
      const auto f = sweep.at("filter").get<std::string>();
      if (f != "nonzero_gamma0") throw ValidationError("unknown sweep filter \"" + f + "\"");
      grid.nonzero_gamma0_only = true;
    }
    return grid;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("sweep: ") + e.what());
  }
}

}  // namespace dimctl
