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

#include "retro/equivalence.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/errors.h"
#include "retro/random.h"
#include "retro/retrodiction.h"

namespace retro {

namespace {

constexpr double kSignatureCrossCheckTol = 1e-10;

void require_same_system(const Belief &b1, const Belief &b2) {
    if (b1.dim_s() != b2.dim_s()) {
        throw DimensionMismatch("beliefs live on systems of dimension " +
                                std::to_string(b1.dim_s()) + " and " + std::to_string(b2.dim_s()));
    }
}

ComplexMatrix sum_form_from_root(const ComplexMatrix &root, std::size_t ds, std::size_t dr) {
    ComplexMatrix out(ds * ds, ds * ds);
    const auto id_r = ComplexMatrix::identity(dr);
    for (std::size_t k = 0; k < ds; ++k) {
        for (std::size_t kp = 0; kp < ds; ++kp) {
            const auto unit = ComplexMatrix::unit(ds, k, kp);
            const auto block = partial_trace(root * kron(unit, id_r) * root, {ds, dr}, {1});
            out += kron(block, unit);
        }
    }
    return out;
}

}  // namespace

EquivalenceSignature signature(const Belief &belief) {
    const std::size_t ds = belief.dim_s();
    const std::size_t dr = belief.dim_r();
    const auto root = psd_sqrt(belief.joint().matrix());
    const auto vec = double_ket(root, ds, dr);
    auto op = partial_trace_of_projector(vec, {ds, dr, ds, dr}, {1, 3});
    const auto check = sum_form_from_root(root, ds, dr);
    const double gap = frobenius_distance(op, check);
    if (gap > kSignatureCrossCheckTol) {
        throw NumericalError("signature: vectorized and sum forms differ by " +
                             std::to_string(gap));
    }
    return {hermitian_part(op), ds};
}

ComplexMatrix signature_sum_form(const Belief &belief) {
    return sum_form_from_root(psd_sqrt(belief.joint().matrix()), belief.dim_s(), belief.dim_r());
}

EquivalenceReport equivalent(const Belief &b1, const Belief &b2, double tol) {
    require_same_system(b1, b2);
    EquivalenceReport report;
    report.tolerance = tol;
    report.signature_distance = frobenius_distance(signature(b1).op, signature(b2).op);
    report.marginal_distance =
        frobenius_distance(b1.marginal_s().matrix(), b2.marginal_s().matrix());
    report.equivalent = report.signature_distance <= tol;
    return report;
}

ComplexMatrix ensemble_second_moment(const StateEnsemble &ensemble) {
    const std::size_t d = ensemble.dim();
    ComplexMatrix moment(d * d, d * d);
    for (std::size_t x = 0; x < ensemble.members().size(); ++x) {
        const auto &m = ensemble.members()[x];
        const auto eig = hermitian_eig(m.state.matrix());
        if (d > 1 && eig.eigenvalues[1] > eig.cutoff()) {
            throw NotPure("ensemble_second_moment: member " + std::to_string(x) +
                          " has second eigenvalue " + std::to_string(eig.eigenvalues[1]));
        }
        moment += kron(m.state.matrix(), m.state.matrix()) * m.probability;
    }
    return moment;
}

ComplexMatrix ensemble_sqrt_moment(const StateEnsemble &ensemble) {
    const std::size_t d = ensemble.dim();
    ComplexMatrix moment(d * d, d * d);
    for (const auto &m : ensemble.members()) {
        const auto root = psd_sqrt(m.state.matrix());
        moment += kron(root, root) * m.probability;
    }
    return moment;
}

ComplexMatrix ensemble_sqrt_moment_transposed(const StateEnsemble &ensemble) {
    const std::size_t d = ensemble.dim();
    ComplexMatrix moment(d * d, d * d);
    for (const auto &m : ensemble.members()) {
        const auto root = psd_sqrt(m.state.matrix());
        moment += kron(root, root.transpose()) * m.probability;
    }
    return moment;
}

std::vector<DensityOperator> spanning_states(std::size_t dim) {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < dim; ++i) {
        states.push_back(DensityOperator::pure(ComplexMatrix::ket(dim, i)));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            ComplexMatrix plus(dim, 1);
            plus(i, 0) = h;
            plus(j, 0) = h;
            ComplexMatrix plus_i(dim, 1);
            plus_i(i, 0) = h;
            plus_i(j, 0) = Complex(0, h);
            states.push_back(DensityOperator::pure(plus));
            states.push_back(DensityOperator::pure(plus_i));
        }
    }
    return states;
}

POVM informationally_complete_povm(std::size_t dim) {
    if (dim == 2) {
        return sic_povm();
    }
    const auto states = spanning_states(dim);
    ComplexMatrix frame(dim, dim);
    for (const auto &s : states) {
        frame += s.matrix();
    }
    const auto w = support_inv_sqrt(frame);
    std::vector<ComplexMatrix> effects;
    for (const auto &s : states) {
        effects.push_back(hermitian_part(w * s.matrix() * w));
    }
    return POVM(std::move(effects));
}

WitnessChannelFamily witness_family(std::size_t dim_s, std::size_t dim_t) {
    if (dim_t < 2) {
        throw ValidationError("witness_family: the output needs at least two levels, got " +
                              std::to_string(dim_t));
    }
    auto povm = informationally_complete_povm(dim_s);
    const auto flat = QuantumChannel::replacement(dim_s, DensityOperator::maximally_mixed(dim_t));
    ComplexMatrix embed(dim_t, 2);
    embed(0, 0) = 1.0;
    embed(1, 1) = 1.0;
    const auto into_output = QuantumChannel::isometry(embed);

    WitnessChannelFamily family{{flat}, povm};
    const auto id = ComplexMatrix::identity(dim_s);
    for (const auto &f : povm.effects()) {
        const auto binary = measurement_channel(POVM({f, hermitian_part(id - f)}));
        family.channels.push_back(
            QuantumChannel::mixture({flat, binary.then(into_output)}, {0.5, 0.5}));
    }
    return family;
}

OracleReport oracle_equivalent(const Belief &b1, const Belief &b2, const OracleOptions &options) {
    require_same_system(b1, b2);
    const std::size_t ds = b1.dim_s();

    std::vector<QuantumChannel> battery = witness_family(ds, 2).channels;
    Rng rng(options.seed);
    for (std::size_t n = 0; n < options.random_channels; ++n) {
        const std::size_t dt = 2 + n % 2;
        battery.push_back(random_channel(rng, ds, dt, ds * dt));
    }

    OracleReport report;
    report.seed = options.seed;
    report.channels_tested = battery.size();
    const RetrodictionOptions projected{.project_support = true, .renormalize = false};
    for (const auto &e : battery) {
        const Retrodictor r1(e, b1);
        const Retrodictor r2(e, b2);
        for (const auto &sigma : spanning_states(e.dim_out())) {
            const auto u1 = r1.retrodict(sigma, projected).updated_s;
            const auto u2 = r2.retrodict(sigma, projected).updated_s;
            report.max_deviation = std::max(report.max_deviation, frobenius_distance(u1, u2));
        }
    }
    report.equivalent = report.max_deviation <= options.tol;
    return report;
}

}  // namespace retro
