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

#include "dim/walsh.hpp"

#include <bit>

#include "dim/errors.hpp"

namespace dim {

void fwht_inplace(std::vector<std::int64_t>& values) {
  const std::size_t n = values.size();
  if (!std::has_single_bit(n)) throw DimensionError("FWHT length must be a power of two");
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const std::int64_t a = values[j];
        const std::int64_t b = values[j + len];
        values[j] = a + b;
        values[j + len] = a - b;
      }
    }
  }
}

std::vector<Rational> walsh_spectrum(const Security& g) {
  const auto table = g.truth_table();
  // With bit set meaning +1, the character prod_{i in S} sigma_i equals
  // (-1)^{|S & ~b|}; index by the complemented state so the butterfly's
  // (-1)^{|S & b|} kernel applies directly.
  const std::size_t size = table.size();
  std::vector<std::int64_t> values(size);
  for (std::size_t b = 0; b < size; ++b) values[(size - 1) ^ b] = table[b];
  fwht_inplace(values);
  std::vector<Rational> out;
  out.reserve(size);
  const std::int64_t scale = static_cast<std::int64_t>(size);
  for (std::size_t s = 0; s < size; ++s) out.emplace_back(values[s], scale);
  return out;
}

}  // namespace dim
