// Copyright 2026 The Retrodiction Authors
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

// Seeded generators for random quantum objects. Used by the equivalence
// oracle, the `verify` suite and the tests.

#pragma once

#include <cstdint>
#include <random>

#include "retro/model.h"

namespace retro {

using Rng = std::mt19937_64;

/// Complex Ginibre matrix with i.i.d. standard normal real and imaginary parts.
ComplexMatrix random_gaussian(Rng &rng, std::size_t rows, std::size_t cols);

/// Haar-random isometry (rows >= cols) via Gram-Schmidt on Gaussian columns.
ComplexMatrix random_isometry(Rng &rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_unitary(Rng &rng, std::size_t dim);

/// Normalized Haar-random ket.
ComplexMatrix random_ket(Rng &rng, std::size_t dim);

/// G G^dag / Tr with G of shape dim x rank; full rank when rank >= dim.
DensityOperator random_density(Rng &rng, std::size_t dim, std::size_t rank);
inline DensityOperator random_density(Rng &rng, std::size_t dim) {
    return random_density(rng, dim, dim);
}

/// Channel from a Haar isometry dim_in -> dim_out (x) env, env = `kraus_rank`.
QuantumChannel random_channel(Rng &rng, std::size_t dim_in, std::size_t dim_out,
                              std::size_t kraus_rank);

/// Random joint belief on S (x) R with the given rank.
Belief random_belief(Rng &rng, std::size_t dim_s, std::size_t dim_r, std::size_t rank);

/// Strictly positive probabilities summing to 1.
std::vector<double> random_probabilities(Rng &rng, std::size_t n);

}  // namespace retro
