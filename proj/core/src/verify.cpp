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

#include "dim/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>

#include "dim/analysis.hpp"
#include "dim/oracle.hpp"
#include "dim/parallel.hpp"
#include "dim/random.hpp"
#include "dim/serialize.hpp"

namespace dim::verify {

namespace {

constexpr std::size_t kKeptMessages = 8;

struct Instance {
  Security security;
  Prior prior;
  std::string label;
};

gen::Rng case_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return gen::Rng(seq);
}

std::string describe(const Security& g, const Prior& p) {
  return "g=" + io::security_to_json(g).dump() + " P=" + io::prior_to_json(p).dump();
}

using CaseFn = std::function<std::vector<std::string>(std::size_t)>;

SuiteReport run_cases(std::string_view id, std::size_t count, unsigned jobs, const CaseFn& fn) {
  SuiteReport report;
  report.id = std::string(id);
  report.title = std::string(suite_title(id));
  std::vector<std::vector<std::string>> results(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    try {
      results[i] = fn(i);
    } catch (const std::exception& e) {
      results[i] = {std::string("exception: ") + e.what()};
    }
  });
  report.cases = count;
  for (auto& r : results) {
    if (r.empty()) continue;
    ++report.failed;
    for (auto& msg : r) {
      if (report.failures.size() < kKeptMessages) report.failures.push_back(std::move(msg));
    }
  }
  return report;
}

const Rational& price_at(const RefinementHistory& h, StateIndex s, int t) {
  const int last = h.outcome(s).equilibrium_round > 0 ? h.outcome(s).equilibrium_round : h.rounds();
  const auto step = h.step(s, std::min(t, last));
  return step->second->price;
}

void tally(const SuiteOptions& options, std::string_view source, const Security& g, const Prior& p,
           const RefinementHistory& h) {
  if (options.tally == nullptr) return;
  auto failures = check_equilibrium(g, p, h);
  for (auto& f : failures) f = std::string(source) + ": " + describe(g, p) + ": " + f;
  options.tally->record(source, failures);
}

// A1: parity securities under uniformly biased priors reach c_2 = g by round 2.
SuiteReport suite_a1(const SuiteOptions& options) {
  std::vector<Instance> instances;
  gen::Rng rng = case_rng(options.seed, 1, 0);
  const std::vector<Rational> biases{Rational(1, 4), Rational(1, 3), Rational(2, 3), Rational(9, 10)};
  for (int n = 2; n <= 10; ++n) {
    std::vector<Security> securities;
    if (n <= 6) {
      securities = gen::all_parities(n);
    } else {
      for (int k = 0; k < 50; ++k) securities.push_back(gen::random_parity(n, rng));
    }
    for (const auto& g : securities) {
      for (const auto& p : biases) instances.push_back({g, Prior::product_biased(n, p), ""});
    }
  }
  return run_cases("A1", instances.size(), options.jobs, [&](std::size_t i) {
    const auto& [g, prior, label] = instances[i];
    const auto h = refine_all(g, prior, default_max_rounds(g.n_players()));
    std::vector<std::string> failures;
    for (StateIndex s = 0; s < state_count(g.n_players()); ++s) {
      const auto out = h.outcome(s);
      const Rational truth(g.payoff_bits(s));
      if (!out.terminated || !out.converged_to_truth || out.equilibrium_round > 2 ||
          price_at(h, s, 2) != truth) {
        failures.push_back(describe(g, prior) + " state " + std::to_string(s) + ": eq@" +
                           std::to_string(out.equilibrium_round) + " c2=" + price_at(h, s, 2).str());
        break;
      }
    }
    tally(options, "A1", g, prior, h);
    return failures;
  });
}

// A2: full-mask parity with the unbiased prior never moves off price 0.
SuiteReport suite_a2(const SuiteOptions& options) {
  std::vector<Instance> instances;
  for (int n = 2; n <= 8; ++n) {
    const auto full = static_cast<StateIndex>((1u << n) - 1);
    for (int sign : {1, -1}) instances.push_back({Security::parity(n, sign, full), Prior::uniform(n), ""});
  }
  return run_cases("A2", instances.size(), options.jobs, [&](std::size_t i) {
    const auto& [g, prior, label] = instances[i];
    const auto h = refine_all(g, prior, default_max_rounds(g.n_players()));
    std::vector<std::string> failures;
    for (StateIndex s = 0; s < state_count(g.n_players()); ++s) {
      const Trace trace = h.trace(s);
      for (const auto& r : trace.rounds) {
        if (!r.price.is_zero()) {
          failures.push_back(describe(g, prior) + " state " + std::to_string(s) + " round " +
                             std::to_string(r.round) + " price " + r.price.str());
        }
      }
      if (trace.converged_to_truth) {
        failures.push_back(describe(g, prior) + " state " + std::to_string(s) + " converged");
      }
      if (!failures.empty()) break;
    }
    return failures;
  });
}

// A3: symmetric securities under symmetric priors with nonzero covariance gap.
SuiteReport suite_a3(const SuiteOptions& options) {
  std::vector<Instance> instances;
  for (int n = 2; n <= 8; ++n) {
    gen::Rng rng = case_rng(options.seed, 3, static_cast<std::uint64_t>(n));
    std::vector<Security> securities;
    std::vector<Prior> priors;
    for (int k = 0; k < 50; ++k) securities.push_back(gen::random_symmetric(n, rng));
    for (int k = 0; k < 50; ++k) priors.push_back(gen::random_symmetric_prior(n, rng));
    for (const auto& g : securities) {
      for (const auto& p : priors) instances.push_back({g, p, ""});
    }
  }
  std::vector<char> kept(instances.size(), 0);
  auto report = run_cases("A3", instances.size(), options.jobs, [&](std::size_t i) {
    const auto& [g, prior, label] = instances[i];
    std::vector<std::string> failures;
    if (gamma0(g, prior).covariance_gap.is_zero()) return failures;
    kept[i] = 1;
    const auto h = refine_all(g, prior, default_max_rounds(g.n_players()));
    for (StateIndex s = 0; s < state_count(g.n_players()); ++s) {
      const auto out = h.outcome(s);
      if (!out.terminated || !out.converged_to_truth || out.equilibrium_round > 2) {
        failures.push_back(describe(g, prior) + " state " + std::to_string(s) + ": eq@" +
                           std::to_string(out.equilibrium_round) + " final " + out.final_price.str());
        break;
      }
    }
    tally(options, "A3", g, prior, h);
    return failures;
  });
  std::size_t n_kept = 0;
  for (char k : kept) n_kept += k;
  report.note = std::to_string(n_kept) + " of " + std::to_string(instances.size()) +
                " pairs had nonzero covariance gap";
  report.cases = n_kept;
  return report;
}

// A4: weighted threshold securities converge within N rounds for arbitrary priors.
SuiteReport suite_a4(const SuiteOptions& options) {
  std::vector<Instance> instances;
  for (int n = 2; n <= 8; ++n) {
    gen::Rng rng = case_rng(options.seed, 4, static_cast<std::uint64_t>(n));
    std::vector<Security> securities;
    std::vector<Prior> priors;
    for (int k = 0; k < 30; ++k) securities.push_back(gen::random_threshold(n, rng));
    for (int k = 0; k < 100; ++k) priors.push_back(gen::random_full_support_prior(n, rng));
    for (const auto& g : securities) {
      for (const auto& p : priors) instances.push_back({g, p, ""});
    }
  }
  return run_cases("A4", instances.size(), options.jobs, [&](std::size_t i) {
    const auto& [g, prior, label] = instances[i];
    const int n = g.n_players();
    const auto h = refine_all(g, prior, default_max_rounds(n));
    std::vector<std::string> failures;
    for (StateIndex s = 0; s < state_count(n); ++s) {
      const auto out = h.outcome(s);
      if (!out.terminated || !out.converged_to_truth || out.first_truth_round == 0 ||
          out.first_truth_round > n) {
        failures.push_back(describe(g, prior) + " state " + std::to_string(s) + ": first truth @" +
                           std::to_string(out.first_truth_round) + " final " + out.final_price.str());
        break;
      }
    }
    tally(options, "A4", g, prior, h);
    return failures;
  });
}

// A5: consensus at equilibrium for every run of A1..A4 plus random pairs.
SuiteReport suite_a5(const SuiteOptions& options) {
  EquilibriumTally local;
  EquilibriumTally& shared = options.tally != nullptr ? *options.tally : local;
  SuiteOptions with_tally = options;
  with_tally.tally = &shared;
  if (!shared.covers("A1")) suite_a1(with_tally);
  if (!shared.covers("A3")) suite_a3(with_tally);
  if (!shared.covers("A4")) suite_a4(with_tally);

  const std::size_t random_runs = 500;
  auto report = run_cases("A5", random_runs, options.jobs, [&](std::size_t i) {
    gen::Rng rng = case_rng(options.seed, 5, i);
    const int n = gen::uniform_int(rng, 1, 6);
    const Security g = gen::random_security(n, rng);
    const Prior prior = gen::random_prior(n, rng);
    const auto h = refine_all(g, prior, default_max_rounds(n));
    auto failures = check_equilibrium(g, prior, h);
    for (auto& f : failures) f = describe(g, prior) + ": " + f;
    return failures;
  });
  report.cases += shared.runs();
  report.failed += shared.violations();
  for (auto& m : shared.messages()) {
    if (report.failures.size() < kKeptMessages) report.failures.push_back(m);
  }
  report.note = std::to_string(shared.runs()) + " runs from A1/A3/A4 + " + std::to_string(random_runs) +
                " random pairs";
  return report;
}

// A6: engine traces are byte-identical to the naive oracle's.
SuiteReport suite_a6(const SuiteOptions& options) {
  return run_cases("A6", 1000, options.jobs, [&](std::size_t i) {
    gen::Rng rng = case_rng(options.seed, 6, i);
    const int n = gen::uniform_int(rng, 2, 5);
    const Security g = gen::random_security(n, rng);
    const Prior prior = gen::random_prior(n, rng);
    const SpinState s(n, static_cast<StateIndex>(gen::uniform_int(rng, 0, (1 << n) - 1)));
    const int max_rounds = default_max_rounds(n);
    const std::string engine = io::canonical(run_dynamics(g, prior, s, max_rounds));
    const std::string naive = io::canonical(oracle::naive_run(g, prior, s, max_rounds));
    if (engine == naive) return std::vector<std::string>{};
    return std::vector<std::string>{describe(g, prior) + " state " + s.str() + "\n engine " + engine +
                                    "\n oracle " + naive};
  });
}

// A7: XOR under the uniform prior stalls at price 0.
SuiteReport suite_a7(const SuiteOptions& options) {
  const Security xor2 = Security::parity(2, 1, 0b11);
  const Prior uniform = Prior::uniform(2);
  return run_cases("A7", 4, options.jobs, [&](std::size_t i) {
    const SpinState s(2, static_cast<StateIndex>(i));
    std::vector<std::string> failures;
    for (const Trace& trace : {run_dynamics(xor2, uniform, s, 16), oracle::naive_run(xor2, uniform, s, 16)}) {
      bool prices_zero = true;
      for (const auto& r : trace.rounds) prices_zero = prices_zero && r.price.is_zero();
      if (trace.equilibrium_round != 1 || !prices_zero || !trace.final_price.is_zero() ||
          trace.converged_to_truth) {
        failures.push_back("state " + s.str() + ": " + io::canonical(trace));
      }
    }
    return failures;
  });
}

// A8: structural properties over random instances plus classification round trips.
SuiteReport suite_a8(const SuiteOptions& options) {
  const std::size_t dynamics_cases = 10000;
  const std::size_t classification_cases = 2000;
  return run_cases("A8", dynamics_cases + classification_cases, options.jobs, [&](std::size_t i) {
    gen::Rng rng = case_rng(options.seed, 8, i);
    std::vector<std::string> failures;
    if (i < dynamics_cases) {
      const int n = 1 + static_cast<int>(i % 8);
      const Security g = gen::random_security(n, rng);
      const Prior prior = gen::random_prior(n, rng);
      const auto h = refine_all(g, prior, default_max_rounds(n));
      failures = check_structure(g, prior, h);
      const SpinState s(n, static_cast<StateIndex>(gen::uniform_int(rng, 0, (1 << n) - 1)));
      if (run_dynamics(g, prior, s, default_max_rounds(n)) != h.trace(s.bits())) {
        failures.push_back("shared refinement trace differs from single-state run for " + s.str());
      }
      for (auto& f : failures) f = describe(g, prior) + ": " + f;
      return failures;
    }
    // Classification round trips.
    const int n = gen::uniform_int(rng, 1, 10);
    const Security parity = gen::random_parity(n, rng);
    const auto& pform = std::get<ParityForm>(parity.form());
    const auto decomposed = parity_decompose(parity.to_table());
    if (!decomposed || *decomposed != pform) {
      failures.push_back("parity round trip failed for " + io::security_to_json(parity).dump());
    }
    const auto levels = gen::random_levels(n, rng);
    const auto sym = is_totally_symmetric(Security::symmetric(levels).to_table());
    if (!sym || *sym != levels) failures.push_back("symmetric round trip failed");
    const int m = gen::uniform_int(rng, 1, 6);
    const Security candidate = gen::uniform_int(rng, 0, 1) ? gen::random_threshold(m, rng) : gen::random_table(m, rng);
    if (const auto witness = recognize_threshold(candidate)) {
      const Security rebuilt = Security::threshold(witness->weights, witness->threshold);
      if (rebuilt.truth_table() != candidate.truth_table()) {
        failures.push_back("threshold witness does not reproduce " + io::security_to_json(candidate).dump());
      }
    } else if (std::holds_alternative<ThresholdForm>(candidate.form())) {
      failures.push_back("threshold security not recognized: " + io::security_to_json(candidate).dump());
    }
    return failures;
  });
}

// A9: a symmetric instance with zero covariance gap misses the truth somewhere.
SuiteReport suite_a9(const SuiteOptions& options) {
  std::vector<Instance> instances{{Security::parity(2, 1, 0b11), Prior::uniform(2), "xor"}};
  for (int n = 3; n <= 6; ++n) {
    instances.push_back({Security::parity(n, 1, static_cast<StateIndex>((1u << n) - 1)), Prior::uniform(n), "parity"});
  }
  return run_cases("A9", instances.size(), options.jobs, [&](std::size_t i) {
    const auto& [g, prior, label] = instances[i];
    std::vector<std::string> failures;
    const Gamma0 value = gamma0(g, prior);
    if (!value.covariance_gap.is_zero() || !value.gamma0.is_zero()) {
      failures.push_back(label + ": expected zero covariance gap, got " + value.covariance_gap.str());
    }
    const auto h = refine_all(g, prior, default_max_rounds(g.n_players()));
    bool missed = false;
    for (StateIndex s = 0; s < state_count(g.n_players()); ++s) missed = missed || !h.outcome(s).converged_to_truth;
    if (!missed) failures.push_back(label + ": every state converged despite zero gap");
    return failures;
  });
}

}  // namespace

void EquilibriumTally::record(std::string_view source, const std::vector<std::string>& failures) {
  std::lock_guard lock(mutex_);
  sources_.emplace(source);
  ++runs_;
  if (!failures.empty()) ++violations_;
  for (const auto& f : failures) {
    if (messages_.size() < kKeptMessages) messages_.push_back(f);
  }
}

bool EquilibriumTally::covers(std::string_view source) const {
  std::lock_guard lock(mutex_);
  return sources_.find(source) != sources_.end();
}

std::size_t EquilibriumTally::runs() const {
  std::lock_guard lock(mutex_);
  return runs_;
}

std::size_t EquilibriumTally::violations() const {
  std::lock_guard lock(mutex_);
  return violations_;
}

std::vector<std::string> EquilibriumTally::messages() const {
  std::lock_guard lock(mutex_);
  return messages_;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"};
  return ids;
}

std::string_view suite_title(std::string_view id) {
  static const std::map<std::string, std::string, std::less<>> titles{
      {"A1", "parity securities, biased product priors: c_2 = g by round 2"},
      {"A2", "full-mask parity, unbiased prior: price stays 0, no convergence"},
      {"A3", "symmetric securities and priors, nonzero gamma0: truth by round 2"},
      {"A4", "threshold securities, random priors: truth within N rounds"},
      {"A5", "equilibrium reached, bids equal the price at equilibrium"},
      {"A6", "engine traces byte-identical to the naive oracle"},
      {"A7", "XOR under the uniform prior: price 0 at round 1, no convergence"},
      {"A8", "structural property suite and classification round trips"},
      {"A9", "zero gamma0 symmetric instance misses the truth"},
  };
  const auto it = titles.find(id);
  if (it == titles.end()) throw std::invalid_argument("unknown suite \"" + std::string(id) + "\"");
  return it->second;
}

SuiteReport run_suite(std::string_view id, const SuiteOptions& options) {
  using Fn = SuiteReport (*)(const SuiteOptions&);
  static const std::map<std::string, Fn, std::less<>> suites{
      {"A1", suite_a1}, {"A2", suite_a2}, {"A3", suite_a3}, {"A4", suite_a4}, {"A5", suite_a5},
      {"A6", suite_a6}, {"A7", suite_a7}, {"A8", suite_a8}, {"A9", suite_a9},
  };
  const auto it = suites.find(id);
  if (it == suites.end()) throw std::invalid_argument("unknown suite \"" + std::string(id) + "\"");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report = it->second(options);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::string> check_equilibrium(const Security& g, const Prior& prior,
                                           const RefinementHistory& history) {
  std::vector<std::string> failures;
  const int n = g.n_players();
  const std::size_t states = state_count(n);
  if (!history.all_terminated()) failures.push_back("some state never reached a stationary round");
  for (StateIndex s = 0; s < states; ++s) {
    const int eq = history.outcome(s).equilibrium_round;
    if (eq > 0 && static_cast<std::size_t>(eq - 1) > states - 1) {
      failures.push_back("state " + std::to_string(s) + " needed " + std::to_string(eq - 1) +
                         " refinements, bound is 2^N - 1");
    }
  }
  for (int t = 1; t <= history.rounds(); ++t) {
    for (const BlockRound& round : history.round_blocks(t)) {
      if (!round.stationary()) continue;
      const Rational& price = round.groups.front().price;
      const Block block = Block::from_members(n, round.members);
      for (int i = 0; i < n; ++i) {
        bool has[2] = {false, false};
        for (StateIndex s : round.members) has[spin_of(s, i) == 1] = true;
        for (int spin : {1, -1}) {
          if (!has[spin == 1]) continue;
          const Rational bid = conditional_bid(g, prior, block, i, spin);
          if (bid != price) {
            failures.push_back("round " + std::to_string(t) + " player " + std::to_string(i + 1) + " spin " +
                               std::to_string(spin) + " bids " + bid.str() + " at price " + price.str());
          }
        }
      }
    }
  }
  return failures;
}

std::vector<std::string> check_structure(const Security& g, const Prior& prior,
                                         const RefinementHistory& history) {
  std::vector<std::string> failures;
  auto fail = [&](std::string msg) {
    if (failures.size() < 4) failures.push_back(std::move(msg));
  };
  const int n = g.n_players();
  const std::size_t states = state_count(n);
  const Rational one(1);
  const Rational minus_one(-1);

  Partition previous = Partition::trivial(n);
  std::vector<Block> frozen;
  for (int t = 1; t <= history.rounds(); ++t) {
    Partition current{n, t, frozen};
    for (const BlockRound& round : history.round_blocks(t)) {
      const Block block = Block::from_members(n, round.members);
      Block covered(n);
      for (const PriceGroup& group : round.groups) {
        const Block part = Block::from_members(n, group.members);
        if (part.empty() || !part.is_subset_of(block) || part.intersects(covered)) {
          fail("round " + std::to_string(t) + ": price group is not a disjoint sub-block");
        }
        part.for_each([&](StateIndex s) { covered.insert(s); });
        if (group.price < minus_one || group.price > one) fail("price outside [-1, 1]: " + group.price.str());
        // Price is the average of the bids of any member.
        const StateIndex s = group.members.front();
        Rational sum;
        for (int i = 0; i < n; ++i) sum += spin_of(s, i) == 1 ? *round.bid_plus[i] : *round.bid_minus[i];
        if (sum / Rational(n) != group.price) fail("price is not the mean bid in round " + std::to_string(t));
        current.blocks.push_back(part);
        if (round.stationary()) frozen.push_back(part);
      }
      if (!(covered == block)) fail("price groups do not cover their block in round " + std::to_string(t));

      for (int i = 0; i < n; ++i) {
        const BetaGamma bg = beta_gamma(g, prior, block, i);
        const auto& up = round.bid_plus[i];
        const auto& down = round.bid_minus[i];
        for (const auto* bid : {&up, &down}) {
          if (bid->has_value() && (**bid < minus_one || **bid > one)) fail("bid outside [-1, 1]");
        }
        if (up && down) {
          if (*up != bg.beta + bg.gamma || *down != bg.beta - bg.gamma) {
            fail("affine bid identity fails for player " + std::to_string(i + 1) + " in round " + std::to_string(t));
          }
        } else if (!bg.gamma.is_zero() || bg.beta != (up ? *up : *down)) {
          fail("one-sided block beta/gamma mismatch for player " + std::to_string(i + 1));
        }
      }
    }
    try {
      current.validate();
    } catch (const std::exception& e) {
      fail("round " + std::to_string(t) + " partition invalid: " + e.what());
    }
    if (!current.refines(previous)) fail("round " + std::to_string(t) + " partition does not refine round " + std::to_string(t - 1));
    previous = std::move(current);
  }

  // True-state membership and price-history classes.
  std::map<std::vector<Rational>, std::vector<StateIndex>> by_history;
  for (StateIndex s = 0; s < states; ++s) {
    const Trace trace = history.trace(s);
    std::vector<Rational> prices;
    for (const auto& r : trace.rounds) {
      if (!r.block_before.contains(s) || !r.block_after.contains(s)) {
        fail("state " + std::to_string(s) + " left its own block in round " + std::to_string(r.round));
      }
      if (!r.block_after.is_subset_of(r.block_before)) fail("block grew for state " + std::to_string(s));
      prices.push_back(r.price);
    }
    by_history[prices].push_back(s);
  }
  for (const auto& [prices, members] : by_history) {
    const Block final_block = history.trace(members.front()).rounds.back().block_after;
    if (final_block != Block::from_members(n, members)) {
      fail("final block differs from the price-history class of state " + std::to_string(members.front()));
    }
  }
  return failures;
}

}  // namespace dim::verify
