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

#include <cmath>

#include "retro/errors.h"
#include "retro/random.h"
#include "test_util.h"

using namespace retro;
using namespace retro::testing;

namespace {

const ComplexMatrix kHalfId = ComplexMatrix::identity(2) / 2.0;

DensityOperator basis_state(std::size_t dim, std::size_t i) {
    return DensityOperator::pure(ComplexMatrix::ket(dim, i));
}

QuantumChannel measure_z() {
    return measurement_channel(z_basis_povm());
}

QuantumChannel measure_x() {
    return measurement_channel(x_basis_povm());
}

ComplexMatrix plus_projector() {
    return from_bloch(1, 0, 0);
}

ComplexMatrix minus_projector() {
    return from_bloch(-1, 0, 0);
}

// Dense evaluation of the extended map with Eigen, kept independent of the
// library's Jacobi solver and Kraus bookkeeping: E^dag is built from the Choi
// matrix rather than from the Kraus list.
EMat eigen_extended(const QuantumChannel &e, const Belief &b, const EMat &sigma) {
    const Eigen::Index ds = b.dim_s(), dr = b.dim_r(), dt = e.dim_out();
    const EMat beta = to_eigen(b.joint().matrix());
    const EMat beta_s = eigen_trace_second(beta, ds, dr);
    const EMat choi = to_eigen(e.choi());
    // E(X)_{ab} = sum_{ij} X_{ij} J[(i,a),(j,b)]
    EMat predicted = EMat::Zero(dt, dt);
    for (Eigen::Index i = 0; i < ds; ++i) {
        for (Eigen::Index j = 0; j < ds; ++j) {
            predicted += beta_s(i, j) * choi.block(i * dt, j * dt, dt, dt);
        }
    }
    const EMat w = eigen_inv_sqrt(predicted);
    const EMat y = w * sigma * w;
    // <i|E^dag(Y)|j> = Tr[E(|j><i|) Y]
    EMat pulled = EMat::Zero(ds, ds);
    for (Eigen::Index i = 0; i < ds; ++i) {
        for (Eigen::Index j = 0; j < ds; ++j) {
            pulled(i, j) = (choi.block(j * dt, i * dt, dt, dt) * y).trace();
        }
    }
    const EMat root = eigen_sqrt(beta);
    return root * eigen_kron(pulled, EMat::Identity(dr, dr)) * root;
}

struct TableCase {
    BuiltinBelief belief;
    bool x_basis;
    std::size_t outcome;
    ComplexMatrix expected;
};

std::vector<TableCase> table_cases() {
    const ComplexMatrix p0 = ComplexMatrix::unit(2, 0, 0);
    const ComplexMatrix p1 = ComplexMatrix::unit(2, 1, 1);
    const ComplexMatrix pp = plus_projector();
    const ComplexMatrix pm = minus_projector();
    const auto id = ComplexMatrix::identity(2);
    return {
        {BuiltinBelief::flat, false, 0, p0},
        {BuiltinBelief::flat, false, 1, p1},
        {BuiltinBelief::flat, true, 0, pp},
        {BuiltinBelief::flat, true, 1, pm},
        {BuiltinBelief::proper_01, false, 0, p0},
        {BuiltinBelief::proper_01, false, 1, p1},
        {BuiltinBelief::proper_01, true, 0, kHalfId},
        {BuiltinBelief::proper_01, true, 1, kHalfId},
        {BuiltinBelief::improper_phi_plus, false, 0, kHalfId},
        {BuiltinBelief::improper_phi_plus, false, 1, kHalfId},
        {BuiltinBelief::improper_phi_plus, true, 0, kHalfId},
        {BuiltinBelief::improper_phi_plus, true, 1, kHalfId},
        {BuiltinBelief::xyz_design, false, 0, (p0 + id) / 3.0},
        {BuiltinBelief::xyz_design, false, 1, (p1 + id) / 3.0},
        {BuiltinBelief::xyz_design, true, 0, (pp + id) / 3.0},
        {BuiltinBelief::xyz_design, true, 1, (pm + id) / 3.0},
    };
}

TEST(PetzExtended, ReproducesComparisonTable) {
    for (const auto &c : table_cases()) {
        const auto channel = c.x_basis ? measure_x() : measure_z();
        const auto result =
            petz_extended(channel, builtin_belief(c.belief), basis_state(2, c.outcome));
        EXPECT_MATRIX_NEAR(result.updated_s, c.expected, 1e-9)
            << builtin_belief_name(c.belief) << (c.x_basis ? " x " : " z ") << c.outcome;
        EXPECT_NEAR(result.norm_deficit, 0.0, 1e-15);
    }
}

TEST(PetzExtended, SicDesignMatchesXyzRow) {
    const auto sic = builtin_belief(BuiltinBelief::sic_design);
    const auto r = petz_extended(measure_z(), sic, basis_state(2, 0));
    EXPECT_MATRIX_NEAR(r.updated_s, (ComplexMatrix::unit(2, 0, 0) + ComplexMatrix::identity(2)) / 3.0,
                       1e-9);
}

TEST(PetzExtended, ProperBeliefTracksOutcome) {
    const auto b1 = builtin_belief(BuiltinBelief::proper_01);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_MATRIX_NEAR(petz_extended(measure_z(), b1, basis_state(2, k)).updated_s,
                           ComplexMatrix::unit(2, k, k), 1e-10);
    }
}

TEST(PetzExtended, ImproperBeliefIgnoresOutcome) {
    const auto b2 = builtin_belief(BuiltinBelief::improper_phi_plus);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_MATRIX_NEAR(petz_extended(measure_z(), b2, basis_state(2, k)).updated_s, kHalfId,
                           1e-10);
    }
}

TEST(Petz, FlatPriorMeasureZ) {
    const auto r = petz(measure_z(), DensityOperator::maximally_mixed(2), basis_state(2, 0));
    EXPECT_MATRIX_NEAR(r.matrix(), ComplexMatrix::unit(2, 0, 0), 1e-12);
}

TEST(Petz, IdentityChannelReturnsEvidence) {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto prior = random_density(rng, 3);
        const auto sigma = random_density(rng, 3);
        EXPECT_MATRIX_NEAR(petz(QuantumChannel::identity(3), prior, sigma).matrix(),
                           sigma.matrix(), 1e-10);
    }
}

TEST(Petz, DepolarizingWithFlatPriorIsSelfAdjoint) {
    const auto d = QuantumChannel::depolarizing(2, 0.1);
    const auto sigma = apply_channel(d, basis_state(2, 0));
    const std::vector<double> w{0.905, 0.095};
    EXPECT_MATRIX_NEAR(petz(d, DensityOperator::maximally_mixed(2), sigma).matrix(),
                       ComplexMatrix::diagonal(w), 1e-12);
}

TEST(Petz, DimensionMismatch) {
    EXPECT_THROW(petz(QuantumChannel::identity(2), DensityOperator::maximally_mixed(3),
                      DensityOperator::maximally_mixed(2)),
                 DimensionMismatch);
    EXPECT_THROW(petz(QuantumChannel::identity(2), DensityOperator::maximally_mixed(2),
                      DensityOperator::maximally_mixed(3)),
                 DimensionMismatch);
}

TEST(Petz, PriorRecovery) {
    Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t ds = 2 + trial % 2;
        const std::size_t dt = 2 + (trial / 2) % 3;
        const auto e = random_channel(rng, ds, dt, 1 + trial % 4);
        const auto prior = random_density(rng, ds);
        EXPECT_MATRIX_NEAR(petz(e, prior, apply_channel(e, prior)).matrix(), prior.matrix(), 1e-9);
    }
}

TEST(PetzExtended, JointPriorRecovery) {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dr = 1 + trial % 3;
        const auto b = random_belief(rng, 2, dr, 2 * dr);
        const auto e = random_channel(rng, 2, 2 + trial % 2, 1 + trial % 3);
        const auto r = petz_extended(e, b, apply_channel(e, b.marginal_s()));
        ASSERT_TRUE(r.updated_joint.has_value());
        EXPECT_MATRIX_NEAR(*r.updated_joint, b.joint().matrix(), 1e-9);
    }
}

TEST(PetzExtended, PureJointPriorIsFixedPoint) {
    Rng rng(24);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dr = 2 + trial % 2;
        const auto b = random_belief(rng, 2, dr, 1);
        const auto e = random_channel(rng, 2, 2 + trial % 3, 2 + trial % 2);
        const auto sigma = random_density(rng, e.dim_out());
        const auto r = petz_extended(e, b, sigma, {.project_support = true});
        EXPECT_MATRIX_NEAR(*r.updated_joint, b.joint().matrix(), 1e-9);
    }
}

TEST(PetzExtended, ProductBeliefReducesToPetz) {
    Rng rng(25);
    for (int trial = 0; trial < 30; ++trial) {
        const auto beta_s = random_density(rng, 2);
        const auto beta_r = random_density(rng, 2 + trial % 3);
        const Belief b(kron(beta_s.matrix(), beta_r.matrix()), 2, beta_r.dim());
        const auto e = random_channel(rng, 2, 3, 2);
        const auto sigma = random_density(rng, 3);
        EXPECT_MATRIX_NEAR(petz_extended(e, b, sigma).updated_s, petz(e, beta_s, sigma).matrix(),
                           1e-10);
    }
}

TEST(PetzExtended, TracePreservedAndJointConsistent) {
    Rng rng(26);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dr = 1 + trial % 4;
        const auto b = random_belief(rng, 2, dr, 1 + trial % (2 * dr));
        const auto e = random_channel(rng, 2, 2 + trial % 2, 2 + trial % 3);
        const auto sigma = random_density(rng, e.dim_out());
        const auto r = petz_extended(e, b, sigma);
        EXPECT_NEAR(r.updated_s.trace().real(), 1.0, 1e-10);
        EXPECT_MATRIX_NEAR(partial_trace(*r.updated_joint, {2, dr}, {1}), r.updated_s, 1e-12);
        EXPECT_NO_THROW(r.state());
    }
}

TEST(PetzExtended, MatchesDenseEigenEvaluation) {
    Rng rng(27);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t ds = 2 + trial % 2;
        const std::size_t dr = 1 + trial % 3;
        const auto b = random_belief(rng, ds, dr, 1 + trial % (ds * dr));
        const auto e = random_channel(rng, ds, 2 + trial % 3, ds);
        const auto sigma = random_density(rng, e.dim_out());
        const auto r = petz_extended(e, b, sigma, {.project_support = true});
        const EMat expected = eigen_extended(e, b, to_eigen(sigma.matrix()));
        EXPECT_MATRIX_NEAR(*r.updated_joint, from_eigen(expected), 1e-9);
    }
}

TEST(PetzExtended, SupportViolationAndProjection) {
    // Prior |0><0| through measure-Z predicts only 0~, so evidence 1~ is outside.
    const auto prior = Belief::without_register(basis_state(2, 0));
    const auto sigma = DensityOperator::maximally_mixed(2);
    EXPECT_THROW(petz_extended(measure_z(), prior, sigma), SupportViolation);
    EXPECT_THROW(petz(measure_z(), prior.joint(), sigma), SupportViolation);
    try {
        petz_extended(measure_z(), prior, sigma);
    } catch (const SupportViolation &e) {
        EXPECT_NEAR(e.outside_weight(), 0.5, 1e-12);
    }

    const auto projected = petz_extended(measure_z(), prior, sigma, {.project_support = true});
    EXPECT_NEAR(projected.norm_deficit, 0.5, 1e-12);
    EXPECT_FALSE(projected.renormalized);
    EXPECT_NEAR(projected.updated_s.trace().real(), 1.0 - projected.norm_deficit, 1e-10);
    EXPECT_THROW(projected.state(), InvalidState);

    const auto renorm = petz_extended(measure_z(), prior, sigma,
                                      {.project_support = true, .renormalize = true});
    EXPECT_TRUE(renorm.renormalized);
    EXPECT_NEAR(renorm.norm_deficit, 0.5, 1e-12);
    EXPECT_MATRIX_NEAR(renorm.updated_s, ComplexMatrix::unit(2, 0, 0), 1e-12);
}

TEST(PetzExtended, EvidenceEntirelyOutsideSupport) {
    const auto prior = Belief::without_register(basis_state(2, 0));
    EXPECT_THROW(petz_extended(measure_z(), prior, basis_state(2, 1),
                               {.project_support = true, .renormalize = true}),
                 SupportViolation);
    const auto r = petz_extended(measure_z(), prior, basis_state(2, 1), {.project_support = true});
    EXPECT_NEAR(r.norm_deficit, 1.0, 1e-12);
    EXPECT_MATRIX_NEAR(r.updated_s, ComplexMatrix::zeros(2, 2), 1e-12);
}

TEST(PetzExtended, DimensionMismatch) {
    EXPECT_THROW(petz_extended(QuantumChannel::identity(3),
                               builtin_belief(BuiltinBelief::flat), DensityOperator::maximally_mixed(3)),
                 DimensionMismatch);
}

TEST(RecoveryCompose, FlatBeliefIsDoubleDepolarizing) {
    const auto d = QuantumChannel::depolarizing(2, 0.1);
    const auto r = recovery_compose(d, builtin_belief(BuiltinBelief::flat));
    EXPECT_MATRIX_NEAR(r.choi(), d.then(d).choi(), 1e-10);
    const auto v = bloch_vector(r.apply(from_bloch(0.6, 0, 0.8)));
    EXPECT_NEAR(std::hypot(v[0], v[2]), 0.81, 1e-9);
}

TEST(RecoveryCompose, ImproperBeliefIsConstant) {
    const auto d = QuantumChannel::depolarizing(2, 0.1);
    const auto r = recovery_compose(d, builtin_belief(BuiltinBelief::improper_phi_plus));
    Rng rng(28);
    for (int trial = 0; trial < 10; ++trial) {
        EXPECT_MATRIX_NEAR(r.apply(random_density(rng, 2).matrix()), kHalfId, 1e-10);
    }
}

TEST(RecoveryCompose, IdentityChannelIsIdentityWithoutCorrelations) {
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const auto prior = random_density(rng, 2);
        const auto rho = random_density(rng, 2).matrix();
        const auto plain = recovery_compose(QuantumChannel::identity(2), Belief::without_register(prior));
        EXPECT_MATRIX_NEAR(plain.apply(rho), rho, 1e-10);
        const Belief product(kron(prior.matrix(), random_density(rng, 3).matrix()), 2, 3);
        const auto r = recovery_compose(QuantumChannel::identity(2), product);
        EXPECT_MATRIX_NEAR(r.apply(rho), rho, 1e-10);
    }
}

TEST(RecoveryCompose, IdentityChannelDephasesUnderProperBelief) {
    // A register correlated with S keeps the update from undoing even a
    // noiseless channel: with beta_1 the result is rho dephased in Z.
    const auto r =
        recovery_compose(QuantumChannel::identity(2), builtin_belief(BuiltinBelief::proper_01));
    const auto rho = from_bloch(0.6, 0.0, 0.8);
    EXPECT_MATRIX_NEAR(r.apply(rho), from_bloch(0, 0, 0.8), 1e-10);
}

TEST(RecoveryCompose, AgreesWithPointwiseRetrodiction) {
    Rng rng(30);
    const auto d = QuantumChannel::depolarizing(2, 0.1);
    for (const auto name : kAllBuiltinBeliefs) {
        const auto b = builtin_belief(name);
        const auto r = recovery_compose(d, b);
        const auto rho = random_density(rng, 2);
        EXPECT_MATRIX_NEAR(r.apply(rho.matrix()),
                           petz_extended(d, b, apply_channel(d, rho)).updated_s, 1e-10);
    }
}

TEST(RecoveryCompose, RankDeficientPredictionThrows) {
    const auto prior = Belief::without_register(basis_state(2, 0));
    EXPECT_THROW(recovery_compose(measure_z(), prior), SupportViolation);
}

}  // namespace
