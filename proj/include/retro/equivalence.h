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

// Equivalence of joint beliefs.
//
// Two beliefs beta (on S R1) and gamma (on S R2) retrodict identically for every
// channel out of S exactly when their signatures
//
//     Tr_{R R'} |sqrt(beta)>><<sqrt(beta)|     (an operator on S (x) S')
//
// coincide. Equal marginals on S follow from this, as do the familiar
// invariances: appending an uncorrelated ancilla, an isometry on the register,
// or any reversible channel on the register. For classical-register beliefs
// built from ensembles {rho_x, p(x)} the signature reduces to the moment
// sum_x p(x) sqrt(rho_x) (x) sqrt(rho_x), which for pure ensembles is the
// second moment sum_x p(x) |psi_x><psi_x|^{(x)2}.
//
// oracle_equivalent() decides the same question without the signature, by
// running the retrodiction map on a battery of channels that is rich enough to
// separate inequivalent beliefs.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "retro/model.h"

namespace retro {

inline constexpr double kEquivalenceTol = 1e-9;
inline constexpr double kOracleTol = 1e-8;
inline constexpr std::uint64_t kDefaultOracleSeed = 20250917;

struct EquivalenceSignature {
    /// Operator on S (x) S'.
    ComplexMatrix op;
    std::size_t dim_s = 0;
};

/// Signature through the double-ket vectorization. Every call also evaluates
/// the sum form (signature_sum_form) and throws NumericalError if the two
/// differ by more than 1e-10.
EquivalenceSignature signature(const Belief &belief);

/// sum_{k,k'} Tr_R[sqrt(beta) (|k><k'| (x) 1) sqrt(beta)] (x) |k><k'|.
ComplexMatrix signature_sum_form(const Belief &belief);

struct EquivalenceReport {
    bool equivalent = false;
    double signature_distance = 0;
    double marginal_distance = 0;
    double tolerance = kEquivalenceTol;
    /// Present when the brute-force oracle was also run.
    std::optional<bool> oracle_equivalent;
    std::optional<double> oracle_max_deviation;
    std::optional<std::uint64_t> seed;
    std::size_t channels_tested = 0;
};

/// Signature comparison in Frobenius norm.
EquivalenceReport equivalent(const Belief &b1, const Belief &b2, double tol = kEquivalenceTol);

/// sum_x p(x) rho_x (x) rho_x for an ensemble of pure states; NotPure if some
/// member has a second eigenvalue above the cutoff.
ComplexMatrix ensemble_second_moment(const StateEnsemble &ensemble);

/// sum_x p(x) sqrt(rho_x) (x) sqrt(rho_x).
ComplexMatrix ensemble_sqrt_moment(const StateEnsemble &ensemble);

/// sum_x p(x) sqrt(rho_x) (x) sqrt(rho_x)^T, the form that appears before the
/// partial transpose is undone. Equality of this form and of
/// ensemble_sqrt_moment are equivalent conditions.
ComplexMatrix ensemble_sqrt_moment_transposed(const StateEnsemble &ensemble);

/// d^2 pure states |i>, (|i>+|j>)/sqrt2, (|i>+i|j>)/sqrt2 spanning the operator
/// space of dimension d.
std::vector<DensityOperator> spanning_states(std::size_t dim);

/// Informationally complete POVM: the tetrahedral SIC for d = 2, otherwise
/// the spanning states conjugated by S^{-1/2}, S = sum of their projectors.
POVM informationally_complete_povm(std::size_t dim);

struct WitnessChannelFamily {
    /// E_0 first, then one E_k per POVM effect.
    std::vector<QuantumChannel> channels;
    POVM povm;
};

/// E_0(rho) = Tr[rho] 1/d_T and
/// E_k(rho) = (1/2) Tr[rho] 1/d_T + (1/2) Tr[F_k rho] |0><0| + (1/2) Tr[(1 - F_k) rho] |1><1|.
/// Every output is full rank.
WitnessChannelFamily witness_family(std::size_t dim_s, std::size_t dim_t);

struct OracleOptions {
    std::uint64_t seed = kDefaultOracleSeed;
    std::size_t random_channels = 20;
    double tol = kOracleTol;
};

struct OracleReport {
    bool equivalent = false;
    double max_deviation = 0;
    std::size_t channels_tested = 0;
    std::uint64_t seed = 0;
};

/// Brute-force equivalence decision: retrodict with both beliefs through the
/// witness family and `random_channels` seeded Haar-dilation channels, on a
/// spanning set of output states, and compare the updated beliefs on S.
OracleReport oracle_equivalent(const Belief &b1, const Belief &b2,
                               const OracleOptions &options = {});

}  // namespace retro
