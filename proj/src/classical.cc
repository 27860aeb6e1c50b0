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

#include "retro/classical.h"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "retro/errors.h"

namespace retro::classical {

namespace {

void check_probabilities(const std::vector<double> &w, const char *what) {
    if (w.empty()) {
        throw InvalidDistribution(std::string(what) + ": empty");
    }
    double total = 0;
    for (double x : w) {
        if (!(x >= 0.0)) {
            throw InvalidDistribution(std::string(what) + ": negative or NaN weight");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > kProbabilityTol) {
        throw InvalidDistribution(std::string(what) + ": weights sum to " + std::to_string(total));
    }
}

// p(b) = sum_a phi(b|a) gamma(a)
std::vector<double> predicted(const Distribution &prior, const StochasticMatrix &forward) {
    std::vector<double> p(forward.outputs(), 0.0);
    for (std::size_t b = 0; b < forward.outputs(); ++b) {
        for (std::size_t a = 0; a < forward.inputs(); ++a) {
            p[b] += forward(b, a) * prior[a];
        }
    }
    return p;
}

void check_evidence(const std::vector<double> &p, const Distribution &evidence) {
    if (evidence.size() != p.size()) {
        throw DimensionMismatch("evidence has " + std::to_string(evidence.size()) +
                                " outcomes, forward model has " + std::to_string(p.size()));
    }
    for (std::size_t b = 0; b < p.size(); ++b) {
        if (evidence[b] > 0.0 && p[b] <= 0.0) {
            throw UnsupportedEvidence("evidence weight " + std::to_string(evidence[b]) +
                                      " on outcome " + std::to_string(b) +
                                      ", which has zero predicted probability");
        }
    }
}

}  // namespace

Distribution::Distribution(std::vector<double> weights) : weights_(std::move(weights)) {
    check_probabilities(weights_, "Distribution");
}

Distribution Distribution::point(std::size_t n, std::size_t outcome) {
    std::vector<double> w(n, 0.0);
    w.at(outcome) = 1.0;
    return Distribution(std::move(w));
}

Distribution Distribution::uniform(std::size_t n) {
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointDistribution::JointDistribution(std::vector<double> weights, std::size_t n_a,
                                     std::size_t n_c)
    : weights_(std::move(weights)), n_a_(n_a), n_c_(n_c) {
    if (weights_.size() != n_a * n_c) {
        throw DimensionMismatch("JointDistribution: " + std::to_string(weights_.size()) +
                                " weights for a " + std::to_string(n_a) + "x" +
                                std::to_string(n_c) + " table");
    }
    check_probabilities(weights_, "JointDistribution");
}

JointDistribution JointDistribution::independent(const Distribution &a, const Distribution &c) {
    std::vector<double> w;
    for (double x : a.weights()) {
        for (double y : c.weights()) {
            w.push_back(x * y);
        }
    }
    return JointDistribution(std::move(w), a.size(), c.size());
}

Distribution JointDistribution::marginal_a() const {
    std::vector<double> m(n_a_, 0.0);
    for (std::size_t a = 0; a < n_a_; ++a) {
        for (std::size_t c = 0; c < n_c_; ++c) {
            m[a] += (*this)(a, c);
        }
    }
    return Distribution(std::move(m));
}

StochasticMatrix::StochasticMatrix(std::vector<std::vector<double>> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty() || entries_.front().empty()) {
        throw InvalidDistribution("StochasticMatrix: empty");
    }
    inputs_ = entries_.front().size();
    for (const auto &row : entries_) {
        if (row.size() != inputs_) {
            throw DimensionMismatch("StochasticMatrix: ragged rows");
        }
    }
    for (std::size_t a = 0; a < inputs_; ++a) {
        double total = 0;
        for (const auto &row : entries_) {
            if (!(row[a] >= 0.0)) {
                throw InvalidDistribution("StochasticMatrix: negative entry");
            }
            total += row[a];
        }
        if (std::abs(total - 1.0) > kProbabilityTol) {
            throw InvalidDistribution("StochasticMatrix: column " + std::to_string(a) +
                                      " sums to " + std::to_string(total));
        }
    }
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
    std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        e[i][i] = 1.0;
    }
    return StochasticMatrix(std::move(e));
}

StochasticMatrix StochasticMatrix::binary_symmetric(double flip) {
    return StochasticMatrix({{1.0 - flip, flip}, {flip, 1.0 - flip}});
}

QuantumChannel StochasticMatrix::as_channel() const {
    std::vector<ComplexMatrix> kraus;
    for (std::size_t b = 0; b < outputs(); ++b) {
        for (std::size_t a = 0; a < inputs_; ++a) {
            if (entries_[b][a] > 0.0) {
                ComplexMatrix k(outputs(), inputs_);
                k(b, a) = std::sqrt(entries_[b][a]);
                kraus.push_back(std::move(k));
            }
        }
    }
    return QuantumChannel(std::move(kraus));
}

Distribution jeffrey_update(const Distribution &prior, const StochasticMatrix &forward,
                            const Distribution &evidence) {
    if (prior.size() != forward.inputs()) {
        throw DimensionMismatch("prior has " + std::to_string(prior.size()) +
                                " outcomes, forward model expects " +
                                std::to_string(forward.inputs()));
    }
    const auto p = predicted(prior, forward);
    check_evidence(p, evidence);
    std::vector<double> q(prior.size(), 0.0);
    for (std::size_t b = 0; b < p.size(); ++b) {
        if (evidence[b] == 0.0) {
            continue;
        }
        for (std::size_t a = 0; a < prior.size(); ++a) {
            q[a] += forward(b, a) * prior[a] / p[b] * evidence[b];
        }
    }
    return Distribution(std::move(q));
}

JointDistribution jeffrey_update_extended(const JointDistribution &prior_joint,
                                          const StochasticMatrix &forward,
                                          const Distribution &evidence) {
    if (prior_joint.n_a() != forward.inputs()) {
        throw DimensionMismatch("joint prior has " + std::to_string(prior_joint.n_a()) +
                                " values of a, forward model expects " +
                                std::to_string(forward.inputs()));
    }
    // Normalizer over (a', c') with Phi(b|a', c') = phi(b|a').
    std::vector<double> p(forward.outputs(), 0.0);
    for (std::size_t b = 0; b < forward.outputs(); ++b) {
        for (std::size_t a = 0; a < prior_joint.n_a(); ++a) {
            for (std::size_t c = 0; c < prior_joint.n_c(); ++c) {
                p[b] += forward(b, a) * prior_joint(a, c);
            }
        }
    }
    check_evidence(p, evidence);
    std::vector<double> q(prior_joint.weights().size(), 0.0);
    for (std::size_t b = 0; b < p.size(); ++b) {
        if (evidence[b] == 0.0) {
            continue;
        }
        for (std::size_t a = 0; a < prior_joint.n_a(); ++a) {
            for (std::size_t c = 0; c < prior_joint.n_c(); ++c) {
                q[a * prior_joint.n_c() + c] +=
                    forward(b, a) * prior_joint(a, c) / p[b] * evidence[b];
            }
        }
    }
    return JointDistribution(std::move(q), prior_joint.n_a(), prior_joint.n_c());
}

Distribution random_distribution(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> uniform(0.01, 1.0);
    std::vector<double> w(n);
    for (auto &x : w) {
        x = uniform(rng);
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto &x : w) {
        x /= total;
    }
    return Distribution(std::move(w));
}

StochasticMatrix random_stochastic(std::mt19937_64 &rng, std::size_t outputs, std::size_t inputs) {
    std::vector<std::vector<double>> e(outputs, std::vector<double>(inputs));
    for (std::size_t a = 0; a < inputs; ++a) {
        const auto column = random_distribution(rng, outputs);
        for (std::size_t b = 0; b < outputs; ++b) {
            e[b][a] = column[b];
        }
    }
    return StochasticMatrix(std::move(e));
}

}  // namespace retro::classical
