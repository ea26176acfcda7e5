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

#ifndef DIM_WALSH_HPP_
#define DIM_WALSH_HPP_

#include <cstdint>
#include <vector>

#include "dim/rational.hpp"
#include "dim/security.hpp"

namespace dim {

// In-place unnormalized fast Walsh-Hadamard butterfly over a length-2^k vector:
// out[S] = sum_b (-1)^{|S & b|} in[b].
void fwht_inplace(std::vector<std::int64_t>& values);

// Fourier coefficients of g in the +-1 basis: coef[S] = E_uniform[g(sigma) * prod_{i in S} sigma_i].
// Index S is a player bitmask.
std::vector<Rational> walsh_spectrum(const Security& g);

}  // namespace dim

#endif  // DIM_WALSH_HPP_
