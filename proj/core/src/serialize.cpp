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

#include "dim/serialize.hpp"

#include <bit>
#include <sstream>

#include "dim/errors.hpp"

namespace dim::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& require(const Json& j, const char* field) {
  if (!j.is_object()) throw ValidationError(std::string("expected an object holding \"") + field + "\"");
  const auto it = j.find(field);
  if (it == j.end()) throw ValidationError(std::string("missing field \"") + field + "\"");
  return *it;
}

int require_int(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer()) throw ValidationError(std::string("field \"") + field + "\" must be an integer");
  return v.get<int>();
}

std::string require_string(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_string()) throw ValidationError(std::string("field \"") + field + "\" must be a string");
  return v.get<std::string>();
}

const Json& require_array(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_array()) throw ValidationError(std::string("field \"") + field + "\" must be an array");
  return v;
}

std::vector<Rational> rationals_from(const Json& arr, const std::string& field) {
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(rational_from_json(arr[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Json rationals_to(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

int players_for_table(std::size_t entries, const std::string& what) {
  if (entries < 2 || !std::has_single_bit(entries)) {
    throw ValidationError(what + " length " + std::to_string(entries) + " is not 2^N with N >= 1");
  }
  return std::countr_zero(entries);
}

void check_declared_players(const Json& j, int n) {
  if (j.contains("n_players") && require_int(j, "n_players") != n) {
    throw ValidationError("n_players disagrees with the data (" + std::to_string(n) + ")");
  }
}

Json block_to_json(const Block& b) {
  Json arr = Json::array();
  b.for_each([&](StateIndex s) { arr.push_back(s); });
  return arr;
}

Block block_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ValidationError("block must be an array of state indices");
  Block b(n);
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw ValidationError("block entries must be state indices");
    b.insert(v.get<StateIndex>());
  }
  return b;
}

}  // namespace

Json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(field + ": " + e.what());
    }
  }
  throw ValidationError(field + ": expected a rational string \"n/d\" or an integer");
}

Json security_to_json(const Security& g) {
  const int n = g.n_players();
  return std::visit(
      Overloaded{
          [&](const ParityForm& f) {
            Json mask = Json::array();
            for (int i = 0; i < n; ++i) {
              if ((f.mask >> i) & 1u) mask.push_back(i + 1);
            }
            return Json{{"type", "parity"}, {"n_players", n}, {"sign", f.sign}, {"mask", mask}};
          },
          [&](const SymmetricForm& f) { return Json{{"type", "symmetric"}, {"levels", f.levels}}; },
          [&](const ThresholdForm& f) {
            return Json{{"type", "threshold"}, {"w", rationals_to(f.weights)}, {"theta", f.threshold.str()}};
          },
          [&](const TableForm& f) {
            Json values = Json::array();
            for (auto v : f.values) values.push_back(static_cast<int>(v));
            return Json{{"type", "table"}, {"n_players", n}, {"values", values}};
          },
      },
      g.form());
}

Security security_from_json(const Json& j) {
  const std::string type = require_string(j, "type");
  if (type == "parity") {
    const int n = require_int(j, "n_players");
    check_player_count(n);
    StateIndex mask = 0;
    for (const auto& v : require_array(j, "mask")) {
      if (!v.is_number_integer()) throw ValidationError("parity mask entries must be player numbers");
      const int player = v.get<int>();
      if (player < 1 || player > n) {
        throw ValidationError("parity mask player " + std::to_string(player) + " outside 1.." + std::to_string(n));
      }
      mask |= StateIndex{1} << (player - 1);
    }
    return Security::parity(n, require_int(j, "sign"), mask);
  }
  if (type == "symmetric") {
    std::vector<int> levels;
    for (const auto& v : require_array(j, "levels")) {
      if (!v.is_number_integer()) throw ValidationError("symmetric levels must be +1 or -1");
      levels.push_back(v.get<int>());
    }
    auto g = Security::symmetric(std::move(levels));
    check_declared_players(j, g.n_players());
    return g;
  }
  if (type == "threshold") {
    auto g = Security::threshold(rationals_from(require_array(j, "w"), "w"),
                                 rational_from_json(require(j, "theta"), "theta"));
    check_declared_players(j, g.n_players());
    return g;
  }
  if (type == "table") {
    const Json& values = require_array(j, "values");
    const int n = players_for_table(values.size(), "security table");
    check_declared_players(j, n);
    std::vector<std::int8_t> out;
    out.reserve(values.size());
    for (const auto& v : values) {
      if (!v.is_number_integer()) throw ValidationError("security table entries must be +1 or -1");
      out.push_back(static_cast<std::int8_t>(v.get<int>()));
    }
    return Security::table(n, std::move(out));
  }
  throw ValidationError("unknown security type \"" + type + "\"");
}

Json prior_to_json(const Prior& p) {
  const int n = p.n_players();
  return std::visit(
      Overloaded{
          [&](const ProductBiasedForm& f) {
            return Json{{"type", "product_biased"}, {"n_players", n}, {"p", f.p.str()}};
          },
          [&](const ProductForm& f) { return Json{{"type", "product"}, {"p", rationals_to(f.p)}}; },
          [&](const SymmetricLevelsForm& f) {
            return Json{{"type", "symmetric_levels"}, {"levels", rationals_to(f.level_mass)}};
          },
          [&](const PriorTableForm& f) {
            return Json{{"type", "table"}, {"n_players", n}, {"masses", rationals_to(f.masses)}};
          },
      },
      p.form());
}

Prior prior_from_json(const Json& j) {
  const std::string type = require_string(j, "type");
  if (type == "product_biased") {
    const int n = require_int(j, "n_players");
    if (j.contains("m")) return Prior::from_magnetization(n, rational_from_json(j["m"], "m"));
    return Prior::product_biased(n, rational_from_json(require(j, "p"), "p"));
  }
  if (type == "uniform") return Prior::uniform(require_int(j, "n_players"));
  if (type == "product") {
    auto p = Prior::product(rationals_from(require_array(j, "p"), "p"));
    check_declared_players(j, p.n_players());
    return p;
  }
  if (type == "symmetric_levels") {
    auto p = Prior::symmetric_levels(rationals_from(require_array(j, "levels"), "levels"));
    check_declared_players(j, p.n_players());
    return p;
  }
  if (type == "table") {
    const Json& masses = require_array(j, "masses");
    const int n = players_for_table(masses.size(), "prior table");
    check_declared_players(j, n);
    return Prior::table(n, rationals_from(masses, "masses"));
  }
  throw ValidationError("unknown prior type \"" + type + "\"");
}

Json trace_to_json(const Trace& trace) {
  Json rounds = Json::array();
  for (const auto& r : trace.rounds) {
    rounds.push_back(Json{{"round", r.round},
                          {"price", r.price.str()},
                          {"bids", rationals_to(r.bids)},
                          {"block_before", block_to_json(r.block_before)},
                          {"block", block_to_json(r.block_after)}});
  }
  return Json{{"n_players", trace.true_state.n_players()},
              {"true_state", trace.true_state.bits()},
              {"spins", trace.true_state.str()},
              {"rounds", rounds},
              {"equilibrium_round", trace.equilibrium_round},
              {"terminated", trace.terminated},
              {"final_price", trace.final_price.str()},
              {"converged_to_truth", trace.converged_to_truth}};
}

Trace trace_from_json(const Json& j) {
  const int n = require_int(j, "n_players");
  Trace trace{SpinState(n, require(j, "true_state").get<StateIndex>()), {}, 0, false, Rational(0), false};
  for (const auto& r : require_array(j, "rounds")) {
    trace.rounds.push_back(RoundRecord{require_int(r, "round"), block_from_json(require(r, "block_before"), n),
                                       rationals_from(require_array(r, "bids"), "bids"),
                                       rational_from_json(require(r, "price"), "price"),
                                       block_from_json(require(r, "block"), n)});
  }
  trace.equilibrium_round = require_int(j, "equilibrium_round");
  trace.terminated = require(j, "terminated").get<bool>();
  trace.final_price = rational_from_json(require(j, "final_price"), "final_price");
  trace.converged_to_truth = require(j, "converged_to_truth").get<bool>();
  return trace;
}

std::string canonical(const Trace& trace) { return trace_to_json(trace).dump(); }

Json report_to_json(const ClassificationReport& report) {
  Json j = Json::object();
  if (report.parity) {
    Json mask = Json::array();
    for (int i = 0; i < 32; ++i) {
      if ((report.parity->mask >> i) & 1u) mask.push_back(i + 1);
    }
    j["parity"] = Json{{"sign", report.parity->sign}, {"mask", mask}};
  } else {
    j["parity"] = nullptr;
  }
  j["symmetric_levels"] = report.symmetric_levels ? Json(*report.symmetric_levels) : Json(nullptr);
  if (!report.threshold_checked) {
    j["threshold"] = "not_checked";
  } else if (report.threshold_witness) {
    j["threshold"] = Json{{"w", rationals_to(report.threshold_witness->weights)},
                          {"theta", report.threshold_witness->threshold.str()}};
  } else {
    j["threshold"] = nullptr;
  }
  if (report.gamma0) {
    j["gamma0"] = Json{{"covariance_gap", report.gamma0->covariance_gap.str()},
                       {"beta0", report.gamma0->beta0.str()},
                       {"gamma0", report.gamma0->gamma0.str()}};
  } else {
    j["gamma0"] = Json{{"error", report.gamma0_error}};
  }
  j["predicted_round2"] = Json{{"value", report.prediction.converges_by_round_two},
                               {"reason", std::string(reason_tag(report.prediction.reason))}};
  return j;
}

std::string summary_csv_header() { return "true_state,equilibrium_round,final_price,converged"; }

std::string summary_csv_row(const Trace& trace) {
  std::ostringstream os;
  os << trace.true_state.str() << ',' << trace.equilibrium_round << ',' << trace.final_price.str() << ','
     << (trace.converged_to_truth ? "true" : "false");
  return os.str();
}

SpinState state_from_json(const Json& j, int n_players) {
  if (j.is_number_integer()) {
    const auto bits = j.get<std::int64_t>();
    check_player_count(n_players);
    if (bits < 0 || bits >= (std::int64_t{1} << n_players)) {
      throw ValidationError("true_state bitmask " + std::to_string(bits) + " out of range");
    }
    return SpinState(n_players, static_cast<StateIndex>(bits));
  }
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (static_cast<int>(text.size()) != n_players) {
      throw ValidationError("true_state \"" + text + "\" must have one sign per player");
    }
    std::vector<int> spins;
    for (char c : text) {
      if (c != '+' && c != '-') throw ValidationError("true_state characters must be '+' or '-'");
      spins.push_back(c == '+' ? 1 : -1);
    }
    return SpinState::from_spins(spins);
  }
  if (j.is_array()) {
    std::vector<int> spins;
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw ValidationError("true_state spins must be +1 or -1");
      spins.push_back(v.get<int>());
    }
    if (static_cast<int>(spins.size()) != n_players) {
      throw ValidationError("true_state must have one spin per player");
    }
    try {
      return SpinState::from_spins(spins);
    } catch (const DimensionError& e) {
      throw ValidationError(e.what());
    }
  }
  throw ValidationError("true_state must be a bitmask, a \"+-\" string or a spin array");
}

}  // namespace dim::io
