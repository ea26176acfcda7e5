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

#include "dim/analysis.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "dim/engine.hpp"
#include "dim/errors.hpp"
#include "dim/lp.hpp"
#include "dim/walsh.hpp"

namespace dim {

std::optional<std::vector<int>> is_totally_symmetric(const Security& g) {
  if (const auto* f = std::get_if<SymmetricForm>(&g.form())) return f->levels;
  const auto table = g.truth_table();
  std::vector<int> levels(g.n_players() + 1, 0);
  for (std::size_t b = 0; b < table.size(); ++b) {
    int& level = levels[std::popcount(b)];
    if (level == 0) {
      level = table[b];
    } else if (level != table[b]) {
      return std::nullopt;
    }
  }
  return levels;
}

std::optional<ParityForm> parity_decompose(const Security& g) {
  const auto spectrum = walsh_spectrum(g);
  std::optional<ParityForm> found;
  for (std::size_t s = 0; s < spectrum.size(); ++s) {
    const Rational& c = spectrum[s];
    if (c.is_zero()) continue;
    if (found || c.abs() != Rational(1)) return std::nullopt;
    found = ParityForm{c.sign(), static_cast<StateIndex>(s)};
  }
  return found;
}

std::optional<ThresholdForm> recognize_threshold(const Security& g) {
  const int n = g.n_players();
  if (n > kMaxThresholdPlayers) {
    throw ResourceError("threshold recognition is capped at N=" +
                        std::to_string(kMaxThresholdPlayers));
  }
  const auto table = g.truth_table();
  const std::size_t states = table.size();

  // Margin-one separation asks for x = (w, theta) with a_s . x >= 1 for every state s, where
  // a_s = g(s) * (s_1, ..., s_N, -1). Its Farkas dual
  //   max sum lambda  s.t.  sum_s lambda_s a_s = 0,  sum lambda + slack = 1,  lambda >= 0
  // has optimum 0 exactly when the separation is feasible, and its optimal multipliers are a
  // separating x. N+2 rows instead of 2^N.
  lp::StandardFormLp dual;
  dual.a.assign(n + 2, std::vector<Rational>(states + 1));
  dual.b.assign(n + 2, Rational(0));
  dual.c.assign(states + 1, Rational(1));
  dual.c[states] = Rational(0);
  for (std::size_t s = 0; s < states; ++s) {
    const int label = table[s];
    for (int i = 0; i < n; ++i) dual.a[i][s] = Rational(label * spin_of(static_cast<StateIndex>(s), i));
    dual.a[n][s] = Rational(-label);
    dual.a[n + 1][s] = Rational(1);
  }
  dual.a[n + 1][states] = Rational(1);
  dual.b[n + 1] = Rational(1);

  const lp::Solution sol = lp::solve(dual);
  if (sol.status != lp::Status::kOptimal) throw std::logic_error("threshold LP: dual not optimal");
  if (!sol.objective.is_zero()) return std::nullopt;

  // Scale (w, theta) to coprime integers; integral nonzero gaps stay >= 1 in magnitude.
  std::vector<Rational> x(sol.duals.begin(), sol.duals.begin() + n + 1);
  mpz_class den = 1;
  for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.value().get_den_mpz_t());
  mpz_class common = 0;
  for (const auto& v : x) {
    const mpz_class num = v.numerator() * (den / v.denominator());
    mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), num.get_mpz_t());
  }
  if (common == 0) common = 1;
  for (auto& v : x) v = Rational(v.numerator() * (den / v.denominator()) / common, mpz_class(1));

  ThresholdForm witness{std::vector<Rational>(x.begin(), x.begin() + n), x[n]};
  for (std::size_t s = 0; s < states; ++s) {
    Rational gap = -witness.threshold;
    for (int i = 0; i < n; ++i) {
      if (spin_of(static_cast<StateIndex>(s), i) == 1) {
        gap += witness.weights[i];
      } else {
        gap -= witness.weights[i];
      }
    }
    if (gap.abs() < Rational(1) || (gap.sign() > 0) != (table[s] == 1)) {
      throw std::logic_error("threshold LP produced a non-separating witness");
    }
  }
  return witness;
}

Gamma0 gamma0(const Security& g, const Prior& prior) {
  const int n = g.n_players();
  if (prior.n_players() != n) throw DimensionError("security and prior disagree on N");
  const auto table = g.truth_table();
  const auto masses = prior.mass_table();

  Rational g_mean;
  for (std::size_t s = 0; s < masses.size(); ++s) g_mean += table[s] == 1 ? masses[s] : -masses[s];

  const Block everything = Block::all(n);
  std::optional<Gamma0> first;
  for (int i = 0; i < n; ++i) {
    Rational gs_mean;
    Rational s_mean;
    for (std::size_t s = 0; s < masses.size(); ++s) {
      const int si = spin_of(static_cast<StateIndex>(s), i);
      s_mean += si == 1 ? masses[s] : -masses[s];
      gs_mean += table[s] * si == 1 ? masses[s] : -masses[s];
    }
    const BetaGamma bg = beta_gamma(g, prior, everything, i);
    Gamma0 current{gs_mean - g_mean * s_mean, bg.beta, bg.gamma};
    if (!first) {
      first = current;
    } else if (current.covariance_gap != first->covariance_gap || current.gamma0 != first->gamma0 ||
               current.beta0 != first->beta0) {
      throw ClassificationError("covariance gap depends on the player (player 1: " +
                                first->covariance_gap.str() + ", player " + std::to_string(i + 1) +
                                ": " + current.covariance_gap.str() + ")");
    }
  }
  return *first;
}

std::string_view reason_tag(RoundTwoReason reason) {
  switch (reason) {
    case RoundTwoReason::kSeparableBiasedPrior:
      return "separable_biased_prior";
    case RoundTwoReason::kSymmetricNonzeroGamma0:
      return "symmetric_nonzero_gamma0";
    case RoundTwoReason::kNone:
      break;
  }
  return "none";
}

namespace {

bool uniformly_biased(const Prior& prior) {
  const Rational half(1, 2);
  if (const auto* f = std::get_if<ProductBiasedForm>(&prior.form())) return f->p != half;
  if (const auto* f = std::get_if<ProductForm>(&prior.form())) {
    for (const auto& p : f->p) {
      if (p != f->p.front()) return false;
    }
    return f->p.front() != half;
  }
  return false;
}

}  // namespace

RoundTwoPrediction predict_round_two(const Security& g, const Prior& prior) {
  if (parity_decompose(g) && uniformly_biased(prior)) {
    return {true, RoundTwoReason::kSeparableBiasedPrior};
  }
  if (is_totally_symmetric(g) && prior.is_totally_symmetric()) {
    if (!gamma0(g, prior).covariance_gap.is_zero()) {
      return {true, RoundTwoReason::kSymmetricNonzeroGamma0};
    }
  }
  return {};
}

ClassificationReport classify(const Security& g, const Prior& prior) {
  ClassificationReport report;
  report.parity = parity_decompose(g);
  report.symmetric_levels = is_totally_symmetric(g);
  if (g.n_players() <= kMaxThresholdPlayers) {
    report.threshold_witness = recognize_threshold(g);
    report.threshold_checked = true;
  }
  try {
    report.gamma0 = gamma0(g, prior);
  } catch (const ClassificationError& e) {
    report.gamma0_error = e.what();
  }
  report.prediction = predict_round_two(g, prior);
  return report;
}

}  // namespace dim
