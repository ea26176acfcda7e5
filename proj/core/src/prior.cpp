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

#include "dim/prior.hpp"

#include <bit>
#include <string>

#include "dim/errors.hpp"

namespace dim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probability(const Rational& p, const std::string& what) {
  if (p.sign() <= 0 || p >= Rational(1)) {
    throw ValidationError(what + " = " + p.str() + " must lie strictly inside (0, 1)");
  }
}

mpz_class lcm_of_denominators(const std::vector<Rational>& values) {
  mpz_class l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.value().get_den_mpz_t());
  return l;
}

}  // namespace

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Prior Prior::product_biased(int n_players, Rational p) {
  check_player_count(n_players);
  check_probability(p, "bias p");
  return Prior(n_players, ProductBiasedForm{std::move(p)});
}

Prior Prior::product(std::vector<Rational> p) {
  const int n = static_cast<int>(p.size());
  check_player_count(n);
  for (std::size_t i = 0; i < p.size(); ++i) check_probability(p[i], "p_" + std::to_string(i + 1));
  return Prior(n, ProductForm{std::move(p)});
}

Prior Prior::symmetric_levels(std::vector<Rational> level_mass) {
  if (level_mass.size() < 2) throw ValidationError("symmetric prior needs N+1 >= 2 levels");
  const int n = static_cast<int>(level_mass.size()) - 1;
  check_player_count(n);
  Rational total;
  for (std::size_t k = 0; k < level_mass.size(); ++k) {
    if (level_mass[k].sign() <= 0) {
      throw ValidationError("level mass q_" + std::to_string(k) + " = " + level_mass[k].str() +
                            " is not positive");
    }
    total += level_mass[k] * Rational(binomial(n, static_cast<unsigned>(k)), mpz_class(1));
  }
  if (total != Rational(1)) {
    throw ValidationError("symmetric prior masses sum to " + total.str() + ", expected 1");
  }
  return Prior(n, SymmetricLevelsForm{std::move(level_mass)});
}

Prior Prior::table(int n_players, std::vector<Rational> masses) {
  const std::size_t size = state_count(n_players);
  if (masses.size() != size) {
    throw ValidationError("prior table for N=" + std::to_string(n_players) + " needs " +
                          std::to_string(size) + " entries, got " + std::to_string(masses.size()));
  }
  Rational total;
  for (std::size_t b = 0; b < size; ++b) {
    if (masses[b].sign() <= 0) {
      throw ValidationError("prior mass at state " + std::to_string(b) + " = " + masses[b].str() +
                            " is not positive");
    }
    total += masses[b];
  }
  if (total != Rational(1)) {
    throw ValidationError("prior masses sum to " + total.str() + ", expected 1");
  }
  return Prior(n_players, PriorTableForm{std::move(masses)});
}

Prior Prior::uniform(int n_players) { return product_biased(n_players, Rational(1, 2)); }

Prior Prior::from_magnetization(int n_players, const Rational& m) {
  if (m <= Rational(-1) || m >= Rational(1)) {
    throw ValidationError("magnetization m = " + m.str() + " must lie strictly inside (-1, 1)");
  }
  return product_biased(n_players, (Rational(1) + m) / Rational(2));
}

Rational Prior::mass(const SpinState& s) const {
  if (s.n_players() != n_players_) {
    throw DimensionError("state has " + std::to_string(s.n_players()) + " players, prior has " +
                         std::to_string(n_players_));
  }
  return mass_bits(s.bits());
}

Rational Prior::mass_bits(StateIndex bits) const {
  return std::visit(
      Overloaded{
          [&](const ProductBiasedForm& f) {
            const int k = std::popcount(bits);
            return pow(f.p, k) * pow(Rational(1) - f.p, n_players_ - k);
          },
          [&](const ProductForm& f) {
            Rational out(1);
            for (int i = 0; i < n_players_; ++i) {
              out *= spin_of(bits, i) == 1 ? f.p[i] : Rational(1) - f.p[i];
            }
            return out;
          },
          [&](const SymmetricLevelsForm& f) { return f.level_mass[std::popcount(bits)]; },
          [&](const PriorTableForm& f) { return f.masses[bits]; },
      },
      form_);
}

std::vector<Rational> Prior::mass_table() const {
  if (const auto* t = std::get_if<PriorTableForm>(&form_)) return t->masses;
  const std::size_t size = state_count(n_players_);
  std::vector<Rational> out;
  out.reserve(size);
  for (std::size_t b = 0; b < size; ++b) out.push_back(mass_bits(static_cast<StateIndex>(b)));
  return out;
}

IntegerWeights Prior::integer_weights() const {
  const std::size_t size = state_count(n_players_);
  IntegerWeights out;
  out.weights.resize(size);
  if (const auto* f = std::get_if<ProductBiasedForm>(&form_)) {
    // p = a/d: mass = a^k (d-a)^(N-k) / d^N; only N+1 distinct weights.
    const mpz_class a = f->p.numerator();
    const mpz_class d = f->p.denominator();
    const mpz_class rest = d - a;
    std::vector<mpz_class> by_level(n_players_ + 1);
    for (int k = 0; k <= n_players_; ++k) {
      mpz_class up;
      mpz_class down;
      mpz_pow_ui(up.get_mpz_t(), a.get_mpz_t(), k);
      mpz_pow_ui(down.get_mpz_t(), rest.get_mpz_t(), n_players_ - k);
      by_level[k] = up * down;
    }
    for (std::size_t b = 0; b < size; ++b) out.weights[b] = by_level[std::popcount(b)];
    mpz_pow_ui(out.denominator.get_mpz_t(), d.get_mpz_t(), n_players_);
    return out;
  }
  const auto masses = mass_table();
  out.denominator = lcm_of_denominators(masses);
  for (std::size_t b = 0; b < size; ++b) {
    out.weights[b] = masses[b].numerator() * (out.denominator / masses[b].denominator());
  }
  return out;
}

bool Prior::is_totally_symmetric() const {
  if (std::holds_alternative<ProductBiasedForm>(form_) ||
      std::holds_alternative<SymmetricLevelsForm>(form_)) {
    return true;
  }
  const auto masses = mass_table();
  std::vector<const Rational*> level(n_players_ + 1, nullptr);
  for (std::size_t b = 0; b < masses.size(); ++b) {
    auto& ref = level[std::popcount(b)];
    if (ref == nullptr) {
      ref = &masses[b];
    } else if (*ref != masses[b]) {
      return false;
    }
  }
  return true;
}

}  // namespace dim
