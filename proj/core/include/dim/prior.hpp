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

#ifndef DIM_PRIOR_HPP_
#define DIM_PRIOR_HPP_

#include <gmpxx.h>

#include <variant>
#include <vector>

#include "dim/rational.hpp"
#include "dim/state.hpp"

namespace dim {

// Every player independently +1 with probability p.
struct ProductBiasedForm {
  Rational p;
  friend bool operator==(const ProductBiasedForm&, const ProductBiasedForm&) = default;
};

// Player i independently +1 with probability p[i].
struct ProductForm {
  std::vector<Rational> p;
  friend bool operator==(const ProductForm&, const ProductForm&) = default;
};

// Mass level_mass[k] on every state with popcount k.
struct SymmetricLevelsForm {
  std::vector<Rational> level_mass;
  friend bool operator==(const SymmetricLevelsForm&, const SymmetricLevelsForm&) = default;
};

struct PriorTableForm {
  std::vector<Rational> masses;
  friend bool operator==(const PriorTableForm&, const PriorTableForm&) = default;
};

// Prior masses scaled to integers: mass(b) = weights[b] / denominator.
struct IntegerWeights {
  std::vector<mpz_class> weights;
  mpz_class denominator;
};

// Common prior over {+1,-1}^N with full support and exact unit total mass.
class Prior {
 public:
  using Form = std::variant<ProductBiasedForm, ProductForm, SymmetricLevelsForm, PriorTableForm>;

  // All constructors validate and throw ValidationError naming the offending entry.
  static Prior product_biased(int n_players, Rational p);
  static Prior product(std::vector<Rational> p);
  static Prior symmetric_levels(std::vector<Rational> level_mass);
  static Prior table(int n_players, std::vector<Rational> masses);
  static Prior uniform(int n_players);
  // ProductBiased with p = (1 + m) / 2, i.e. magnetization tanh(h) = m. Requires -1 < m < 1.
  static Prior from_magnetization(int n_players, const Rational& m);

  int n_players() const { return n_players_; }
  const Form& form() const { return form_; }

  // Exact mass of s. Throws DimensionError on player-count mismatch.
  Rational mass(const SpinState& s) const;
  Rational mass_bits(StateIndex bits) const;

  // All 2^N masses in bitmask order.
  std::vector<Rational> mass_table() const;
  IntegerWeights integer_weights() const;

  // Mass invariant under player permutations (checked exhaustively).
  bool is_totally_symmetric() const;

  friend bool operator==(const Prior&, const Prior&) = default;

 private:
  Prior(int n_players, Form form) : n_players_(n_players), form_(std::move(form)) {}

  int n_players_;
  Form form_;
};

// n choose k as an exact integer.
mpz_class binomial(unsigned n, unsigned k);

}  // namespace dim

#endif  // DIM_PRIOR_HPP_
