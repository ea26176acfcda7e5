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

#ifndef DIM_SERIALIZE_HPP_
#define DIM_SERIALIZE_HPP_

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "dim/analysis.hpp"
#include "dim/engine.hpp"
#include "dim/prior.hpp"
#include "dim/rational.hpp"
#include "dim/security.hpp"
#include "dim/trace.hpp"

// JSON and CSV forms of the domain types.
//
// Rationals are strings "n/d" ("n" for integers); integers are also accepted on input.
// Player indices in masks are 1-based; tables are flat arrays in state-bitmask order
// (bit i set means player i+1 holds +1). All parse functions throw ValidationError with
// the offending field named.
namespace dim::io {

using Json = nlohmann::json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& field);

// {"type":"parity","n_players":N,"sign":1,"mask":[1,2]}
// {"type":"symmetric","levels":[1,-1,1]}
// {"type":"threshold","w":["1","1"],"theta":"1"}
// {"type":"table","values":[1,-1,-1,1]}
Json security_to_json(const Security& g);
Security security_from_json(const Json& j);

// {"type":"product_biased","n_players":N,"p":"3/4"}   (or "m":"1/2" for magnetization)
// {"type":"product","p":["1/3","1/2"]}
// {"type":"symmetric_levels","levels":["1/8","1/8","1/8","1/8"]}
// {"type":"table","masses":[...]}
// {"type":"uniform","n_players":N}
Json prior_to_json(const Prior& p);
Prior prior_from_json(const Json& j);

Json trace_to_json(const Trace& trace);
Trace trace_from_json(const Json& j);

// Canonical text used for byte-level comparison of traces.
std::string canonical(const Trace& trace);

Json report_to_json(const ClassificationReport& report);

// "true_state,equilibrium_round,final_price,converged"
std::string summary_csv_header();
std::string summary_csv_row(const Trace& trace);

// Reads "+-+" / [1,-1,1] / bitmask integer into a state of N players.
SpinState state_from_json(const Json& j, int n_players);

}  // namespace dim::io

#endif  // DIM_SERIALIZE_HPP_
