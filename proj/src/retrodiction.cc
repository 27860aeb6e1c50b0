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

#include "retro/retrodiction.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/errors.h"

namespace retro {

namespace {

void check_output_dim(const QuantumChannel &e, const DensityOperator &sigma) {
    if (sigma.dim() != e.dim_out()) {
        throw DimensionMismatch("sigma has dimension " + std::to_string(sigma.dim()) +
                                " but the channel outputs dimension " +
                                std::to_string(e.dim_out()));
    }
}

[[noreturn]] void throw_support_violation(double weight) {
    throw SupportViolation("sigma has weight " + std::to_string(weight) +
                               " outside the support of the predicted output E(beta_S)",
                           weight);
}

}  // namespace

DensityOperator RetrodictionResult::state() const {
    return DensityOperator(updated_s);
}

Retrodictor::Retrodictor(const QuantumChannel &channel, const Belief &belief)
    : channel_(channel), belief_(belief) {
    if (belief.dim_s() != channel.dim_in()) {
        throw DimensionMismatch("belief has dim_S = " + std::to_string(belief.dim_s()) +
                                " but the channel acts on dimension " +
                                std::to_string(channel.dim_in()));
    }
    sqrt_joint_ = psd_sqrt(belief.joint().matrix());
    predicted_ = channel.apply(belief.marginal_s().matrix());
    const auto eig = hermitian_eig(predicted_);
    check_psd(eig, "E(beta_S)");
    const double tau = eig.cutoff();
    inv_sqrt_predicted_ = eig.apply([tau](double l) { return l > tau ? 1.0 / std::sqrt(l) : 0.0; });
    support_ = eig.apply([tau](double l) { return l > tau ? 1.0 : 0.0; });
    full_rank_ = eig.rank() == predicted_.rows();
}

ComplexMatrix Retrodictor::joint_map(const ComplexMatrix &y) const {
    const auto pulled_back =
        channel_.adjoint_apply(inv_sqrt_predicted_ * y * inv_sqrt_predicted_);
    const auto lifted = kron(pulled_back, ComplexMatrix::identity(belief_.dim_r()));
    return sqrt_joint_ * lifted * sqrt_joint_;
}

ComplexMatrix Retrodictor::system_map(const ComplexMatrix &y) const {
    return partial_trace(joint_map(y), {belief_.dim_s(), belief_.dim_r()}, {1});
}

double Retrodictor::outside_support_weight(const ComplexMatrix &sigma) const {
    return std::max(0.0, (sigma.trace() - hs_inner(support_, sigma)).real());
}

RetrodictionResult Retrodictor::retrodict(const DensityOperator &sigma,
                                          const RetrodictionOptions &options) const {
    check_output_dim(channel_, sigma);
    const double outside = outside_support_weight(sigma.matrix());
    if (outside > kSupportWeightTol && !options.project_support) {
        throw_support_violation(outside);
    }
    RetrodictionResult result;
    result.dim_s = belief_.dim_s();
    result.dim_r = belief_.dim_r();
    // A sigma A only sees P sigma P, so the projection happens implicitly here.
    auto joint = joint_map(sigma.matrix());
    auto reduced = partial_trace(joint, {belief_.dim_s(), belief_.dim_r()}, {1});
    result.norm_deficit = outside;
    if (options.project_support && options.renormalize) {
        const double kept = reduced.trace().real();
        if (kept <= 0.0) {
            throw_support_violation(outside);
        }
        joint /= kept;
        reduced /= kept;
        result.renormalized = true;
    }
    result.updated_joint = hermitian_part(joint);
    result.updated_s = hermitian_part(reduced);
    return result;
}

DensityOperator petz(const QuantumChannel &e, const DensityOperator &prior,
                     const DensityOperator &sigma) {
    if (prior.dim() != e.dim_in()) {
        throw DimensionMismatch("prior has dimension " + std::to_string(prior.dim()) +
                                " but the channel acts on dimension " +
                                std::to_string(e.dim_in()));
    }
    check_output_dim(e, sigma);
    const auto predicted = e.apply(prior.matrix());
    const auto support = support_projector(predicted);
    const double outside = (sigma.matrix().trace() - hs_inner(support, sigma.matrix())).real();
    if (outside > kSupportWeightTol) {
        throw_support_violation(outside);
    }
    const auto w = support_inv_sqrt(predicted);
    const auto root = psd_sqrt(prior.matrix());
    return DensityOperator(root * e.adjoint_apply(w * sigma.matrix() * w) * root);
}

RetrodictionResult petz_extended(const QuantumChannel &e, const Belief &belief,
                                 const DensityOperator &sigma, const RetrodictionOptions &options) {
    return Retrodictor(e, belief).retrodict(sigma, options);
}

QuantumChannel recovery_compose(const QuantumChannel &e, const Belief &belief) {
    const Retrodictor retro(e, belief);
    if (!retro.predicted_output_full_rank()) {
        throw SupportViolation("recovery_compose: E(beta_S) is rank-deficient", 0.0);
    }
    const std::size_t d = e.dim_in();
    ComplexMatrix choi(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto unit = ComplexMatrix::unit(d, i, j);
            choi += kron(unit, retro.system_map(e.apply(unit)));
        }
    }
    return QuantumChannel::from_choi(hermitian_part(choi), d, d, 1e-9);
}

}  // namespace retro
