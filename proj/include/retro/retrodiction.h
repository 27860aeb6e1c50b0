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

// Bayesian retrodiction with the Petz map.
//
// For a channel E from S to T and a prior beta_S the updated belief given the
// output sigma is
//
//     sqrt(beta_S) E^dag( E(beta_S)^{-1/2} sigma E(beta_S)^{-1/2} ) sqrt(beta_S).
//
// With a joint prior beta on S (x) R the hidden register is carried through:
//
//     sqrt(beta) ( E^dag(...) (x) 1_R ) sqrt(beta),
//
// and the belief about S alone is its partial trace over R. A pure joint prior
// is a fixed point of this update no matter what sigma is observed.

#pragma once

#include <optional>

#include "retro/model.h"

namespace retro {

/// Largest Tr[(1 - P) sigma] accepted without the projection flag, where P is
/// the support projector of E(beta_S).
inline constexpr double kSupportWeightTol = 1e-8;

struct RetrodictionOptions {
    /// Accept sigma with weight outside supp E(beta_S); that weight is dropped
    /// and reported as norm_deficit.
    bool project_support = false;
    /// Rescale the result to unit trace after projection.
    bool renormalize = false;
};

struct RetrodictionResult {
    /// Updated joint belief on S (x) R (equals updated_s when dim_R = 1).
    std::optional<ComplexMatrix> updated_joint;
    ComplexMatrix updated_s;
    std::size_t dim_s = 0;
    std::size_t dim_r = 0;
    /// Tr[(1 - P) sigma]; zero when sigma lies in the support of E(beta_S).
    double norm_deficit = 0;
    bool renormalized = false;

    /// updated_s as a validated density operator. Throws InvalidState when
    /// the result is sub-normalized (projection without renormalization).
    DensityOperator state() const;
};

/// The retrodiction map of a fixed (channel, belief) pair, with the square
/// roots and the inverse square root of E(beta_S) computed once.
class Retrodictor {
   public:
    Retrodictor(const QuantumChannel &channel, const Belief &belief);

    /// sqrt(beta) (E^dag(A y A) (x) 1_R) sqrt(beta) for any operator y on T,
    /// A = E(beta_S)^{-1/2} on its support. Linear in y.
    ComplexMatrix joint_map(const ComplexMatrix &y) const;
    /// Tr_R of joint_map(y).
    ComplexMatrix system_map(const ComplexMatrix &y) const;

    RetrodictionResult retrodict(const DensityOperator &sigma,
                                 const RetrodictionOptions &options = {}) const;

    /// E(beta_S).
    const ComplexMatrix &predicted_output() const {
        return predicted_;
    }
    bool predicted_output_full_rank() const {
        return full_rank_;
    }
    /// Tr[(1 - P) sigma].
    double outside_support_weight(const ComplexMatrix &sigma) const;

    const QuantumChannel &channel() const {
        return channel_;
    }
    const Belief &belief() const {
        return belief_;
    }

   private:
    QuantumChannel channel_;
    Belief belief_;
    ComplexMatrix sqrt_joint_;
    ComplexMatrix predicted_;
    ComplexMatrix inv_sqrt_predicted_;
    ComplexMatrix support_;
    bool full_rank_ = false;
};

/// Petz map with a prior on S alone. Throws SupportViolation when sigma has
/// weight > 1e-8 outside supp E(prior).
DensityOperator petz(const QuantumChannel &e, const DensityOperator &prior,
                     const DensityOperator &sigma);

/// Prior-extended Petz map followed by Tr_R.
RetrodictionResult petz_extended(const QuantumChannel &e, const Belief &belief,
                                 const DensityOperator &sigma,
                                 const RetrodictionOptions &options = {});

/// The composite rho -> R_ext(E(rho)) as a channel on S, built from its action
/// on matrix units and a Choi eigendecomposition. Requires E(beta_S) to be full
/// rank (SupportViolation otherwise).
QuantumChannel recovery_compose(const QuantumChannel &e, const Belief &belief);

}  // namespace retro
