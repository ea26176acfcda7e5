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

#include "dim/oracle.hpp"

#include "dim/errors.hpp"

namespace dim::oracle {

namespace {

int spin_at(std::size_t state, int player) { return ((state >> player) & 1u) ? 1 : -1; }

// b_i(sigma) = sum_hat g(hat) P_i(hat; sigma) with
// P_i(hat; sigma) = delta(hat_i, sigma_i) P_ex(hat) / sum_s delta(s_i, sigma_i) P_ex(s).
Rational player_bid(const std::vector<int>& g, const DistributionArray& ex, std::size_t sigma,
                    int player) {
  Rational norm;
  for (std::size_t s = 0; s < ex.size(); ++s) {
    if (spin_at(s, player) == spin_at(sigma, player)) norm += ex[s];
  }
  Rational bid;
  for (std::size_t hat = 0; hat < ex.size(); ++hat) {
    if (spin_at(hat, player) != spin_at(sigma, player)) continue;
    const Rational p_i = ex[hat] / norm;
    bid += Rational(g[hat]) * p_i;
  }
  return bid;
}

Block support(int n, const DistributionArray& ex) {
  Block out(n);
  for (std::size_t s = 0; s < ex.size(); ++s) {
    if (!ex[s].is_zero()) out.insert(static_cast<StateIndex>(s));
  }
  return out;
}

}  // namespace

NaiveRun naive_run_detailed(const Security& g, const Prior& prior, const SpinState& true_state,
                            int max_rounds) {
  const int n = g.n_players();
  if (prior.n_players() != n || true_state.n_players() != n) {
    throw DimensionError("security, prior and state disagree on N");
  }
  if (max_rounds < 1) throw PreconditionError("max_rounds must be at least 1");
  const std::size_t size = std::size_t{1} << n;

  std::vector<int> payoff(size);
  for (std::size_t s = 0; s < size; ++s) {
    payoff[s] = g.payoff(SpinState(n, static_cast<StateIndex>(s)));
  }

  // ex[sigma] = P_ex_t(.; sigma), initialised to the prior for every sigma.
  std::vector<DistributionArray> ex(size);
  for (std::size_t sigma = 0; sigma < size; ++sigma) {
    ex[sigma].resize(size);
    for (std::size_t hat = 0; hat < size; ++hat) {
      ex[sigma][hat] = prior.mass(SpinState(n, static_cast<StateIndex>(hat)));
    }
  }

  const std::size_t truth = true_state.bits();
  NaiveRun run{Trace{true_state, {}, 0, false, Rational(0), false}, {ex[truth]}};

  for (int t = 1; t <= max_rounds; ++t) {
    // c_t(sigma) = (1/N) sum_i b_{i,t-1}(sigma), for every hypothetical sigma.
    std::vector<std::vector<Rational>> bids(size, std::vector<Rational>(n));
    std::vector<Rational> price(size);
    for (std::size_t sigma = 0; sigma < size; ++sigma) {
      Rational sum;
      for (int i = 0; i < n; ++i) {
        bids[sigma][i] = player_bid(payoff, ex[sigma], sigma, i);
        sum += bids[sigma][i];
      }
      price[sigma] = sum / Rational(n);
    }

    // P_ex_t(hat; sigma) proportional to I(c_t(hat) = c_t(sigma)) P_ex_{t-1}(hat; sigma).
    std::vector<DistributionArray> next(size, DistributionArray(size));
    for (std::size_t sigma = 0; sigma < size; ++sigma) {
      Rational norm;
      for (std::size_t hat = 0; hat < size; ++hat) {
        if (price[hat] == price[sigma]) norm += ex[sigma][hat];
      }
      for (std::size_t hat = 0; hat < size; ++hat) {
        next[sigma][hat] = price[hat] == price[sigma] ? ex[sigma][hat] / norm : Rational(0);
      }
    }

    const Block before = support(n, ex[truth]);
    const Block after = support(n, next[truth]);
    run.trace.rounds.push_back(RoundRecord{t, before, bids[truth], price[truth], after});
    run.observer.push_back(next[truth]);
    ex = std::move(next);
    if (before == after) {
      run.trace.equilibrium_round = t;
      run.trace.terminated = true;
      break;
    }
  }

  run.trace.final_price = run.trace.rounds.back().price;
  run.trace.converged_to_truth = run.trace.final_price == Rational(payoff[truth]);
  return run;
}

}  // namespace dim::oracle
