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

#include "dim/engine.hpp"

#include <algorithm>
#include <span>
#include <string>

#include "dim/errors.hpp"

namespace dim {

namespace {

void check_dimensions(const Security& g, const Prior& prior, const Block& block) {
  if (g.n_players() != prior.n_players() || g.n_players() != block.n_players()) {
    throw DimensionError("security, prior and block disagree on N (" +
                         std::to_string(g.n_players()) + ", " + std::to_string(prior.n_players()) +
                         ", " + std::to_string(block.n_players()) + ")");
  }
}

void check_player(int n_players, int player) {
  if (player < 0 || player >= n_players) {
    throw DimensionError("player index " + std::to_string(player) + " out of range");
  }
}

// Evaluates bids and prices on blocks using integer-scaled prior weights: every
// conditional expectation is a ratio of two weight sums, so the common prior
// denominator cancels.
class BlockEvaluator {
 public:
  BlockEvaluator(const Security& g, const Prior& prior)
      : n_(g.n_players()), payoff_(g.truth_table()), weights_(prior.integer_weights().weights) {
    if (g.n_players() != prior.n_players()) {
      throw DimensionError("security and prior disagree on N");
    }
  }

  const std::vector<std::int8_t>& payoff() const { return payoff_; }

  BlockRound evaluate(std::span<const StateIndex> members) const {
    BlockRound out;
    out.members.assign(members.begin(), members.end());

    std::vector<mpz_class> w_plus(n_);
    std::vector<mpz_class> gw_plus(n_);
    mpz_class w_total;
    mpz_class gw_total;
    for (StateIndex s : members) {
      const mpz_class& w = weights_[s];
      const bool up = payoff_[s] > 0;
      w_total += w;
      if (up) {
        gw_total += w;
      } else {
        gw_total -= w;
      }
      for (StateIndex bits = s; bits != 0; bits &= bits - 1) {
        const int i = std::countr_zero(bits);
        w_plus[i] += w;
        if (up) {
          gw_plus[i] += w;
        } else {
          gw_plus[i] -= w;
        }
      }
    }

    out.bid_plus.resize(n_);
    out.bid_minus.resize(n_);
    mpz_class common = 1;
    for (int i = 0; i < n_; ++i) {
      const mpz_class w_minus = w_total - w_plus[i];
      if (w_plus[i] != 0) out.bid_plus[i] = Rational(gw_plus[i], w_plus[i]);
      if (w_minus != 0) out.bid_minus[i] = Rational(gw_total - gw_plus[i], w_minus);
      for (const auto* bid : {&out.bid_plus[i], &out.bid_minus[i]}) {
        if (bid->has_value()) {
          mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), (*bid)->value().get_den_mpz_t());
        }
      }
    }

    // Price numerators over the shared denominator N * common.
    auto scaled = [&](const std::optional<Rational>& bid) {
      if (!bid.has_value()) return mpz_class(0);
      return mpz_class(bid->value().get_num() * (common / bid->value().get_den()));
    };
    mpz_class base;
    std::vector<mpz_class> delta(n_);
    for (int i = 0; i < n_; ++i) {
      const mpz_class minus = scaled(out.bid_minus[i]);
      base += minus;
      delta[i] = scaled(out.bid_plus[i]) - minus;
    }

    std::vector<std::pair<mpz_class, StateIndex>> keyed;
    keyed.reserve(members.size());
    for (StateIndex s : members) {
      mpz_class key = base;
      for (StateIndex bits = s; bits != 0; bits &= bits - 1) key += delta[std::countr_zero(bits)];
      keyed.emplace_back(std::move(key), s);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      const int c = cmp(a.first, b.first);
      return c != 0 ? c < 0 : a.second < b.second;
    });

    const mpz_class price_den = common * n_;
    for (std::size_t lo = 0; lo < keyed.size();) {
      std::size_t hi = lo;
      PriceGroup group{Rational(keyed[lo].first, price_den), {}};
      while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) {
        group.members.push_back(keyed[hi].second);
        ++hi;
      }
      std::sort(group.members.begin(), group.members.end());
      out.groups.push_back(std::move(group));
      lo = hi;
    }
    return out;
  }

 private:
  int n_;
  std::vector<std::int8_t> payoff_;
  std::vector<mpz_class> weights_;
};

std::size_t group_of(const BlockRound& round, StateIndex s) {
  for (std::size_t k = 0; k < round.groups.size(); ++k) {
    const auto& m = round.groups[k].members;
    if (std::binary_search(m.begin(), m.end(), s)) return k;
  }
  throw PreconditionError("state " + std::to_string(s) + " missing from its block");
}

RoundRecord make_record(int n_players, const BlockRound& round, const PriceGroup& group,
                        StateIndex s, int t) {
  RoundRecord rec{t, Block::from_members(n_players, round.members), {}, group.price,
                  Block::from_members(n_players, group.members)};
  rec.bids.reserve(n_players);
  for (int i = 0; i < n_players; ++i) {
    rec.bids.push_back(spin_of(s, i) == 1 ? *round.bid_plus[i] : *round.bid_minus[i]);
  }
  return rec;
}

void finish_trace(Trace& trace, int payoff) {
  trace.final_price = trace.rounds.empty() ? Rational(0) : trace.rounds.back().price;
  trace.converged_to_truth = !trace.rounds.empty() && trace.final_price == Rational(payoff);
}

void check_max_rounds(int max_rounds) {
  if (max_rounds < 1) throw PreconditionError("max_rounds must be at least 1");
}

}  // namespace

Rational conditional_bid(const Security& g, const Prior& prior, const Block& block, int player,
                         int spin) {
  check_dimensions(g, prior, block);
  check_player(g.n_players(), player);
  Rational weighted;
  Rational mass;
  block.for_each([&](StateIndex s) {
    if (spin_of(s, player) != spin) return;
    const Rational p = prior.mass_bits(s);
    mass += p;
    if (g.payoff_bits(s) == 1) {
      weighted += p;
    } else {
      weighted -= p;
    }
  });
  if (mass.is_zero()) {
    throw PreconditionError("no state in block has player " + std::to_string(player + 1) +
                            " at spin " + std::to_string(spin));
  }
  return weighted / mass;
}

Rational clearing_price(const Security& g, const Prior& prior, const Block& block,
                        const SpinState& s) {
  check_dimensions(g, prior, block);
  if (s.n_players() != g.n_players()) throw DimensionError("state has the wrong N");
  if (!block.contains(s.bits())) throw PreconditionError("true state is not in the block");
  Rational sum;
  for (int i = 0; i < g.n_players(); ++i) sum += conditional_bid(g, prior, block, i, s.spin(i));
  return sum / Rational(g.n_players());
}

BetaGamma beta_gamma(const Security& g, const Prior& prior, const Block& block, int player) {
  check_dimensions(g, prior, block);
  check_player(g.n_players(), player);
  // Block aggregates: sum P, sum s_i P, sum g P, sum g s_i P.
  Rational p_sum;
  Rational sp_sum;
  Rational gp_sum;
  Rational gsp_sum;
  block.for_each([&](StateIndex s) {
    const Rational p = prior.mass_bits(s);
    const int si = spin_of(s, player);
    const int gs = g.payoff_bits(s);
    p_sum += p;
    sp_sum += si == 1 ? p : -p;
    gp_sum += gs == 1 ? p : -p;
    gsp_sum += gs * si == 1 ? p : -p;
  });
  const Rational up_mass = p_sum + sp_sum;
  const Rational down_mass = p_sum - sp_sum;
  if (up_mass.is_zero() && down_mass.is_zero()) throw PreconditionError("empty block");
  if (down_mass.is_zero()) return {(gp_sum + gsp_sum) / up_mass, Rational(0)};
  if (up_mass.is_zero()) return {(gp_sum - gsp_sum) / down_mass, Rational(0)};
  const Rational up = (gp_sum + gsp_sum) / up_mass;
  const Rational down = (gp_sum - gsp_sum) / down_mass;
  const Rational half(1, 2);
  return {half * (up + down), half * (up - down)};
}

Partition refine_partition(const Security& g, const Prior& prior, const Partition& partition) {
  const BlockEvaluator eval(g, prior);
  Partition next{partition.n_players, partition.round + 1, {}};
  for (const Block& block : partition.blocks) {
    check_dimensions(g, prior, block);
    const auto members = block.members();
    for (const auto& group : eval.evaluate(members).groups) {
      next.blocks.push_back(Block::from_members(partition.n_players, group.members));
    }
  }
  return next;
}

int default_max_rounds(int n_players) { return static_cast<int>(state_count(n_players)); }

Trace run_dynamics(const Security& g, const Prior& prior, const SpinState& true_state,
                   int max_rounds) {
  check_max_rounds(max_rounds);
  const BlockEvaluator eval(g, prior);
  const int n = g.n_players();
  if (true_state.n_players() != n) throw DimensionError("true state has the wrong N");
  const StateIndex s = true_state.bits();

  Trace trace{true_state, {}, 0, false, Rational(0), false};
  std::vector<StateIndex> members(state_count(n));
  for (std::size_t b = 0; b < members.size(); ++b) members[b] = static_cast<StateIndex>(b);

  for (int t = 1; t <= max_rounds; ++t) {
    const BlockRound round = eval.evaluate(members);
    const PriceGroup& group = round.groups[group_of(round, s)];
    trace.rounds.push_back(make_record(n, round, group, s, t));
    if (round.stationary()) {
      trace.equilibrium_round = t;
      trace.terminated = true;
      break;
    }
    members = group.members;
  }
  finish_trace(trace, eval.payoff()[s]);
  return trace;
}

RefinementHistory refine_all(const Security& g, const Prior& prior, int max_rounds) {
  check_max_rounds(max_rounds);
  const BlockEvaluator eval(g, prior);
  const int n = g.n_players();
  const std::size_t size = state_count(n);

  RefinementHistory history;
  history.n_players_ = n;
  history.payoff_ = eval.payoff();
  history.path_.assign(size, {});
  history.equilibrium_round_.assign(size, 0);

  std::vector<std::vector<StateIndex>> active(1, std::vector<StateIndex>(size));
  for (std::size_t b = 0; b < size; ++b) active[0][b] = static_cast<StateIndex>(b);

  for (int t = 1; t <= max_rounds && !active.empty(); ++t) {
    std::vector<BlockRound> blocks;
    blocks.reserve(active.size());
    std::vector<std::vector<StateIndex>> next;
    for (const auto& members : active) {
      BlockRound round = eval.evaluate(members);
      const auto block_id = static_cast<std::uint32_t>(blocks.size());
      for (std::size_t k = 0; k < round.groups.size(); ++k) {
        for (StateIndex s : round.groups[k].members) {
          history.path_[s].push_back({block_id, static_cast<std::uint32_t>(k)});
          if (round.stationary()) history.equilibrium_round_[s] = t;
        }
        if (!round.stationary()) next.push_back(round.groups[k].members);
      }
      blocks.push_back(std::move(round));
    }
    history.rounds_.push_back(std::move(blocks));
    active = std::move(next);
  }
  return history;
}

bool RefinementHistory::all_terminated() const {
  return std::all_of(equilibrium_round_.begin(), equilibrium_round_.end(),
                     [](int t) { return t > 0; });
}

std::optional<std::pair<const BlockRound*, const PriceGroup*>> RefinementHistory::step(
    StateIndex s, int t) const {
  const auto& path = path_.at(s);
  if (t < 1 || t > static_cast<int>(path.size())) return std::nullopt;
  const Step st = path[t - 1];
  const BlockRound& round = rounds_[t - 1][st.block];
  return std::make_pair(&round, &round.groups[st.group]);
}

Trace RefinementHistory::trace(StateIndex s) const {
  const auto& path = path_.at(s);
  Trace trace{SpinState(n_players_, s), {}, equilibrium_round_[s], equilibrium_round_[s] > 0,
              Rational(0), false};
  trace.rounds.reserve(path.size());
  for (std::size_t t = 0; t < path.size(); ++t) {
    const BlockRound& round = rounds_[t][path[t].block];
    trace.rounds.push_back(
        make_record(n_players_, round, round.groups[path[t].group], s, static_cast<int>(t + 1)));
  }
  finish_trace(trace, payoff_[s]);
  return trace;
}

StateOutcome RefinementHistory::outcome(StateIndex s) const {
  const auto& path = path_.at(s);
  StateOutcome out;
  out.equilibrium_round = equilibrium_round_[s];
  out.terminated = out.equilibrium_round > 0;
  const Rational truth(payoff_[s]);
  for (std::size_t t = 0; t < path.size(); ++t) {
    const Rational& price = rounds_[t][path[t].block].groups[path[t].group].price;
    if (out.first_truth_round == 0 && price == truth) out.first_truth_round = static_cast<int>(t + 1);
    if (t + 1 == path.size()) out.final_price = price;
  }
  out.converged_to_truth = !path.empty() && out.final_price == truth;
  return out;
}

std::vector<Trace> run_all_states(const Security& g, const Prior& prior, int max_rounds) {
  const RefinementHistory history = refine_all(g, prior, max_rounds);
  std::vector<Trace> traces;
  traces.reserve(state_count(g.n_players()));
  for (std::size_t s = 0; s < state_count(g.n_players()); ++s) {
    traces.push_back(history.trace(static_cast<StateIndex>(s)));
  }
  return traces;
}

}  // namespace dim
