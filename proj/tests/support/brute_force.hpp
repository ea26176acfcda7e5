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

#ifndef DIM_TESTS_BRUTE_FORCE_HPP_
#define DIM_TESTS_BRUTE_FORCE_HPP_

// Test-only reference computations by explicit enumeration of spin vectors.
// Nothing here calls into the engine or the analysis code.

#include <functional>
#include <vector>

#include "dim/rational.hpp"

namespace dim::testing {

using Spins = std::vector<int>;
using PayoffFn = std::function<int(const Spins&)>;
using MassFn = std::function<Rational(const Spins&)>;

// Every vector in {+1,-1}^n.
inline std::vector<Spins> all_spin_vectors(int n) {
  std::vector<Spins> out{Spins{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Spins> next;
    for (const auto& v : out) {
      for (int s : {-1, 1}) {
        Spins w = v;
        w.push_back(s);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

// E[f(sigma) | filter(sigma)] under the given masses.
inline Rational expectation(int n, const std::function<Rational(const Spins&)>& f, const MassFn& mass,
                            const std::function<bool(const Spins&)>& filter = nullptr) {
  Rational num;
  Rational den;
  for (const auto& v : all_spin_vectors(n)) {
    if (filter && !filter(v)) continue;
    num += f(v) * mass(v);
    den += mass(v);
  }
  return num / den;
}

inline MassFn uniform_mass(int n) {
  return [n](const Spins&) { return Rational(1, std::int64_t{1} << n); };
}

inline MassFn biased_mass(const Rational& p) {
  return [p](const Spins& v) {
    Rational out(1);
    for (int s : v) out *= s == 1 ? p : Rational(1) - p;
    return out;
  };
}

inline int majority(const Spins& v) {
  int sum = 0;
  for (int s : v) sum += s;
  return sum > 0 ? 1 : -1;
}

inline int product(const Spins& v) {
  int out = 1;
  for (int s : v) out *= s;
  return out;
}

}  // namespace dim::testing

#endif  // DIM_TESTS_BRUTE_FORCE_HPP_
