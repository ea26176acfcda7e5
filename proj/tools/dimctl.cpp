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

// dimctl: run market dynamics, sweeps, classification and acceptance suites.
//
// Exit codes: 0 success, 1 a verification suite failed, 2 invalid input,
// 3 resource cap exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "dim/analysis.hpp"
#include "dim/engine.hpp"
#include "dim/errors.hpp"
#include "dim/parallel.hpp"
#include "dim/serialize.hpp"
#include "dim/verify.hpp"

namespace {

using dim::io::Json;

constexpr int kExitSuiteFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_rounds;
  unsigned jobs = 1;
  std::string suite;
};

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out);
  if (!out) throw dim::ValidationError("cannot write " + f.out);
  out << text;
}

dimctl::ExperimentConfig load(const Flags& f) {
  if (f.config.empty()) throw dim::ValidationError("--config is required");
  return dimctl::load_config(f.config);
}

int max_rounds(const Flags& f, const dimctl::ExperimentConfig& c, int n) {
  if (f.max_rounds) return *f.max_rounds;
  if (c.max_rounds) return *c.max_rounds;
  return dim::default_max_rounds(n);
}

std::string summary(const dim::Trace& t) {
  std::ostringstream os;
  if (t.terminated) {
    os << "eq@" << t.equilibrium_round;
  } else {
    os << "no-eq@" << t.rounds.size();
  }
  os << " price=" << t.final_price.str() << " truth=" << (t.converged_to_truth ? "true" : "false");
  return os.str();
}

int cmd_run(const Flags& f) {
  const auto c = load(f);
  const auto g = dimctl::config_security(c);
  const auto p = dimctl::config_prior(c);
  if (g.n_players() != p.n_players()) throw dim::DimensionError("security and prior disagree on N");
  const auto s = dimctl::config_state(c, g.n_players());
  const auto t = dim::run_dynamics(g, p, s, max_rounds(f, c, g.n_players()));
  if (!f.out.empty()) emit(f, dim::io::trace_to_json(t).dump(2) + "\n");
  std::cout << summary(t) << "\n";
  return 0;
}

int cmd_all_states(const Flags& f) {
  const auto c = load(f);
  const auto g = dimctl::config_security(c);
  const auto p = dimctl::config_prior(c);
  if (g.n_players() != p.n_players()) throw dim::DimensionError("security and prior disagree on N");
  const auto traces = dim::run_all_states(g, p, max_rounds(f, c, g.n_players()));
  if (!f.out.empty()) {
    Json all = Json::array();
    for (const auto& t : traces) all.push_back(dim::io::trace_to_json(t));
    emit(f, all.dump(2) + "\n");
  }
  std::cout << dim::io::summary_csv_header() << "\n";
  for (const auto& t : traces) std::cout << dim::io::summary_csv_row(t) << "\n";
  return 0;
}

std::string class_tags(const dim::ClassificationReport& r) {
  std::string tags;
  const auto add = [&](const char* tag) {
    if (!tags.empty()) tags += '|';
    tags += tag;
  };
  if (r.parity) add("parity");
  if (r.symmetric_levels) add("symmetric");
  if (r.threshold_witness) add("threshold");
  if (!r.threshold_checked) add("threshold_unchecked");
  return tags.empty() ? "none" : tags;
}

int cmd_sweep(const Flags& f) {
  const auto c = load(f);
  if (!c.sweep) throw dim::ValidationError("config is missing \"sweep\"");
  const std::uint64_t seed = f.seed ? *f.seed : c.seed.value_or(1);
  const auto grid = dimctl::expand_sweep(*c.sweep, seed);

  // Per-security classification is shared by every prior in its row of the grid.
  std::vector<dim::ClassificationReport> reports(grid.securities.size());
  dim::parallel_for(grid.securities.size(), f.jobs, [&](std::size_t k) {
    const auto& g = grid.securities[k];
    reports[k].parity = dim::parity_decompose(g);
    reports[k].symmetric_levels = dim::is_totally_symmetric(g);
    reports[k].threshold_checked = g.n_players() <= dim::kMaxThresholdPlayers;
    if (reports[k].threshold_checked) reports[k].threshold_witness = dim::recognize_threshold(g);
  });

  const std::size_t cells = grid.securities.size() * grid.priors.size();
  std::vector<std::string> blocks(cells);
  dim::parallel_for(cells, f.jobs, [&](std::size_t cell) {
    const std::size_t si = cell / grid.priors.size();
    const std::size_t pi = cell % grid.priors.size();
    const auto& g = grid.securities[si];
    const auto& p = grid.priors[pi];
    if (g.n_players() != p.n_players()) {
      throw dim::DimensionError("sweep security " + std::to_string(si) + " and prior " + std::to_string(pi) +
                                " disagree on N");
    }
    std::string gamma = "";
    bool nonzero = false;
    try {
      const auto g0 = dim::gamma0(g, p);
      gamma = g0.covariance_gap.str();
      nonzero = !g0.covariance_gap.is_zero();
    } catch (const dim::ClassificationError&) {
      gamma = "n/a";
    }
    if (grid.nonzero_gamma0_only && !nonzero) return;
    const auto prediction = dim::predict_round_two(g, p);
    const std::string tags = class_tags(reports[si]);
    std::ostringstream os;
    for (const auto& t : dim::run_all_states(g, p, max_rounds(f, c, g.n_players()))) {
      os << si << ',' << pi << ',' << t.true_state.str() << ',' << t.equilibrium_round << ','
         << t.final_price.str() << ',' << (t.converged_to_truth ? "true" : "false") << ',' << gamma << ','
         << tags << ',' << dim::reason_tag(prediction.reason) << '\n';
    }
    blocks[cell] = os.str();
  });

  std::string text =
      "security,prior,true_state,equilibrium_round,final_price,converged,gamma0,classes,predicted_round2\n";
  for (const auto& b : blocks) text += b;
  emit(f, text);
  return 0;
}

int cmd_classify(const Flags& f) {
  const auto c = load(f);
  const auto g = dimctl::config_security(c);
  const auto p = dimctl::config_prior(c);
  if (g.n_players() != p.n_players()) throw dim::DimensionError("security and prior disagree on N");
  emit(f, dim::io::report_to_json(dim::classify(g, p)).dump(2) + "\n");
  return 0;
}

int cmd_verify(const Flags& f) {
  std::string suite = f.suite;
  std::optional<std::uint64_t> seed = f.seed;
  if (!f.config.empty()) {
    const auto c = dimctl::load_config(f.config);
    if (suite.empty() && c.suite) suite = *c.suite;
    if (!seed) seed = c.seed;
  }
  if (suite.empty()) throw dim::ValidationError("no suite named; pass one of A1..A9");
  const auto& ids = dim::verify::suite_ids();
  if (std::find(ids.begin(), ids.end(), suite) == ids.end()) {
    throw dim::ValidationError("unknown suite \"" + suite + "\"");
  }
  dim::verify::SuiteOptions options;
  if (seed) options.seed = *seed;
  options.jobs = f.jobs;
  const auto r = dim::verify::run_suite(suite, options);
  std::ostringstream os;
  os << (r.passed() ? "PASS " : "FAIL ") << r.id << " " << r.title << ": " << (r.cases - r.failed) << "/"
     << r.cases << " passed";
  if (!r.note.empty()) os << "; " << r.note;
  os << "\n";
  for (const auto& m : r.failures) os << "  " << m << "\n";
  emit(f, os.str());
  return r.passed() ? 0 : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulation of prediction-market information aggregation"};
  app.require_subcommand(1);
  Flags flags;

  const auto common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Experiment JSON file");
    sub->add_option("--out", flags.out, "Output file");
    sub->add_option("--seed", flags.seed, "Seed for randomized grids and suites");
    sub->add_option("--max-rounds", flags.max_rounds, "Round cap (default 2^N)")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", flags.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto* run = app.add_subcommand("run", "Trace the dynamics for one true state");
  auto* all = app.add_subcommand("all-states", "Run every true state, CSV summary on stdout");
  auto* sweep = app.add_subcommand("sweep", "Run a securities x priors grid, one CSV row per state");
  auto* classify = app.add_subcommand("classify", "Classify a security under a prior");
  auto* verify = app.add_subcommand("verify", "Run one acceptance suite");
  for (auto* sub : {run, all, sweep, classify, verify}) common(sub);
  verify->add_option("suite", flags.suite, "Suite id, A1..A9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (run->parsed()) return cmd_run(flags);
    if (all->parsed()) return cmd_all_states(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    if (classify->parsed()) return cmd_classify(flags);
    return cmd_verify(flags);
  } catch (const dim::ResourceError& e) {
    std::cerr << "dimctl: " << e.what() << "\n";
    return kExitResource;
  } catch (const dim::ValidationError& e) {
    std::cerr << "dimctl: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const dim::DimensionError& e) {
    std::cerr << "dimctl: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const dim::PreconditionError& e) {
    std::cerr << "dimctl: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Json::exception& e) {
    std::cerr << "dimctl: " << e.what() << "\n";
    return kExitInvalid;
  }
}
