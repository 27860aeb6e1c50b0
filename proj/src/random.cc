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

#include "retro/random.h"

#include <cmath>

#include "retro/errors.h"

namespace retro {

ComplexMatrix random_gaussian(Rng &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(rows, cols);
    for (auto &z : g.data()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = Complex(re, im);
    }
    return g;
}

ComplexMatrix random_isometry(Rng &rng, std::size_t rows, std::size_t cols) {
    if (rows < cols) {
        throw DimensionMismatch("random_isometry: need rows >= cols");
    }
    // Modified Gram-Schmidt with a second pass; positive-diagonal R makes the
    // resulting Q Haar distributed.
    ComplexMatrix q = random_gaussian(rng, rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                Complex dot{};
                for (std::size_t r = 0; r < rows; ++r) {
                    dot += std::conj(q(r, p)) * q(r, c);
                }
                for (std::size_t r = 0; r < rows; ++r) {
                    q(r, c) -= dot * q(r, p);
                }
            }
        }
        double norm = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            norm += std::norm(q(r, c));
        }
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < rows; ++r) {
            q(r, c) /= norm;
        }
    }
    return q;
}

ComplexMatrix random_unitary(Rng &rng, std::size_t dim) {
    return random_isometry(rng, dim, dim);
}

ComplexMatrix random_ket(Rng &rng, std::size_t dim) {
    return random_isometry(rng, dim, 1);
}

DensityOperator random_density(Rng &rng, std::size_t dim, std::size_t rank) {
    const auto g = random_gaussian(rng, dim, rank);
    auto rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityOperator(hermitian_part(rho));
}

QuantumChannel random_channel(Rng &rng, std::size_t dim_in, std::size_t dim_out,
                              std::size_t kraus_rank) {
    const auto v = random_isometry(rng, dim_out * kraus_rank, dim_in);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t e = 0; e < kraus_rank; ++e) {
        ComplexMatrix k(dim_out, dim_in);
        for (std::size_t a = 0; a < dim_out; ++a) {
            for (std::size_t i = 0; i < dim_in; ++i) {
                k(a, i) = v(a * kraus_rank + e, i);
            }
        }
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus));
}

Belief random_belief(Rng &rng, std::size_t dim_s, std::size_t dim_r, std::size_t rank) {
    return Belief(random_density(rng, dim_s * dim_r, rank), dim_s, dim_r);
}

std::vector<double> random_probabilities(Rng &rng, std::size_t n) {
    std::uniform_real_distribution<double> uniform(0.05, 1.0);
    std::vector<double> p(n);
    double total = 0;
    for (auto &x : p) {
        x = uniform(rng);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

}  // namespace retro
