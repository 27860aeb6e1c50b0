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

// Classical Bayesian retrodiction with soft evidence (Jeffrey's rule).
//
// Unlike the quantum case, correlating the prior with a hidden variable c that
// the forward process ignores never changes the retrodicted marginal on a.

#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "retro/model.h"

namespace retro::classical {

/// Probability vector over outcomes 0..n-1.
class Distribution {
   public:
    explicit Distribution(std::vector<double> weights);
    static Distribution point(std::size_t n, std::size_t outcome);
    static Distribution uniform(std::size_t n);

    std::size_t size() const {
        return weights_.size();
    }
    double operator[](std::size_t i) const {
        return weights_[i];
    }
    const std::vector<double> &weights() const {
        return weights_;
    }

   private:
    std::vector<double> weights_;
};

/// Distribution over pairs (a, c), stored row-major with a outermost.
class JointDistribution {
   public:
    JointDistribution(std::vector<double> weights, std::size_t n_a, std::size_t n_c);
    static JointDistribution independent(const Distribution &a, const Distribution &c);

    std::size_t n_a() const {
        return n_a_;
    }
    std::size_t n_c() const {
        return n_c_;
    }
    double operator()(std::size_t a, std::size_t c) const {
        return weights_[a * n_c_ + c];
    }
    const std::vector<double> &weights() const {
        return weights_;
    }
    Distribution marginal_a() const;

   private:
    std::vector<double> weights_;
    std::size_t n_a_;
    std::size_t n_c_;
};

/// Transition probabilities phi(b|a); every column a sums to 1.
class StochasticMatrix {
   public:
    /// entries[b][a] = phi(b|a).
    explicit StochasticMatrix(std::vector<std::vector<double>> entries);
    static StochasticMatrix identity(std::size_t n);
    /// Binary symmetric channel with the given flip probability.
    static StochasticMatrix binary_symmetric(double flip);

    std::size_t inputs() const {
        return inputs_;
    }
    std::size_t outputs() const {
        return entries_.size();
    }
    double operator()(std::size_t b, std::size_t a) const {
        return entries_[b][a];
    }

    /// Kraus form sqrt(phi(b|a)) |b><a|, so that diagonal inputs map as phi.
    QuantumChannel as_channel() const;

   private:
    std::vector<std::vector<double>> entries_;
    std::size_t inputs_;
};

/// q(a) = sum_b phi(b|a) gamma(a) / (sum_a' phi(b|a') gamma(a')) r(b).
///
/// Terms with r(b) = 0 are skipped; r(b) > 0 on an outcome of zero predicted
/// probability throws UnsupportedEvidence.
Distribution jeffrey_update(const Distribution &prior, const StochasticMatrix &forward,
                            const Distribution &evidence);

/// The same update for a prior over (a, c) with forward model phi(b|a, c) = phi(b|a).
JointDistribution jeffrey_update_extended(const JointDistribution &prior_joint,
                                          const StochasticMatrix &forward,
                                          const Distribution &evidence);

Distribution random_distribution(std::mt19937_64 &rng, std::size_t n);
StochasticMatrix random_stochastic(std::mt19937_64 &rng, std::size_t outputs, std::size_t inputs);

}  // namespace retro::classical
