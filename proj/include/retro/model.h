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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retro/linalg.h"

namespace retro {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kChannelTol = 1e-10;
inline constexpr double kProbabilityTol = 1e-12;

/// Positive semidefinite, unit-trace operator.
///
/// The stored matrix is the Hermitian part of the input; validation follows
/// the library-wide cutoffs (relative asymmetry <= 1e-10, eigenvalues >= -tau,
/// |Tr - 1| <= 1e-10).
class DensityOperator {
   public:
    explicit DensityOperator(const ComplexMatrix &matrix);
    DensityOperator(const ComplexMatrix &matrix, Dims dims);

    static DensityOperator maximally_mixed(std::size_t dim);
    /// |psi><psi| for a normalized single-column psi.
    static DensityOperator pure(const ComplexMatrix &ket);

    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const Dims &dims() const {
        return dims_;
    }
    std::size_t dim() const {
        return matrix_.rows();
    }
    bool is_pure(double tol = 1e-10) const;

   private:
    ComplexMatrix matrix_;
    Dims dims_;
};

/// Completely positive trace-preserving map in Kraus form.
class QuantumChannel {
   public:
    /// Validates trace preservation (sum K^dag K = 1 within `tol`, Frobenius)
    /// and complete positivity of the derived Choi matrix.
    explicit QuantumChannel(std::vector<ComplexMatrix> kraus_ops, double tol = kChannelTol);

    static QuantumChannel identity(std::size_t dim);
    static QuantumChannel unitary(const ComplexMatrix &u);
    /// rho -> V rho V^dag for an isometry V (dim_out x dim_in).
    static QuantumChannel isometry(const ComplexMatrix &v);
    /// rho -> (1 - p) rho + p Tr[rho] 1/d.
    static QuantumChannel depolarizing(std::size_t dim, double p);
    /// rho -> Tr[rho] target.
    static QuantumChannel replacement(std::size_t dim_in, const DensityOperator &target);
    /// Kraus set extracted from a PSD Choi matrix on in (x) out.
    static QuantumChannel from_choi(const ComplexMatrix &choi, std::size_t dim_in,
                                    std::size_t dim_out, double tol = kChannelTol);
    /// Convex combination sum_i w_i E_i of channels with equal dimensions.
    static QuantumChannel mixture(const std::vector<QuantumChannel> &channels,
                                  const std::vector<double> &weights);

    std::size_t dim_in() const {
        return dim_in_;
    }
    std::size_t dim_out() const {
        return dim_out_;
    }
    const std::vector<ComplexMatrix> &kraus_ops() const {
        return kraus_;
    }

    /// sum_k K x K^dag for any dim_in x dim_in operator x.
    ComplexMatrix apply(const ComplexMatrix &x) const;
    /// sum_k K^dag y K for any dim_out x dim_out operator y.
    ComplexMatrix adjoint_apply(const ComplexMatrix &y) const;
    /// Choi matrix sum_{ij} |i><j| (x) E(|i><j|) on in (x) out.
    ComplexMatrix choi() const;

    /// `next` after this channel.
    QuantumChannel then(const QuantumChannel &next) const;
    /// E (x) id_d, acting on in (x) d.
    QuantumChannel extend_right(std::size_t dim) const;
    /// id_d (x) E, acting on d (x) in.
    QuantumChannel extend_left(std::size_t dim) const;

   private:
    std::vector<ComplexMatrix> kraus_;
    std::size_t dim_in_ = 0;
    std::size_t dim_out_ = 0;
};

DensityOperator apply_channel(const QuantumChannel &e, const DensityOperator &rho);
ComplexMatrix adjoint_apply(const QuantumChannel &e, const ComplexMatrix &y);

class POVM {
   public:
    explicit POVM(std::vector<ComplexMatrix> effects);

    /// Rank-one projectors onto an orthonormal basis (columns of `basis`).
    static POVM from_basis(const ComplexMatrix &basis);

    const std::vector<ComplexMatrix> &effects() const {
        return effects_;
    }
    std::size_t dim() const {
        return effects_.front().rows();
    }
    std::size_t size() const {
        return effects_.size();
    }

   private:
    std::vector<ComplexMatrix> effects_;
};

/// rho -> sum_x Tr[F_x rho] |x~><x~| into a size()-dimensional register.
QuantumChannel measurement_channel(const POVM &povm);

/// Joint prior on S (x) R. dim_R == 1 means no extra system.
class Belief {
   public:
    Belief(const DensityOperator &joint, std::size_t dim_s, std::size_t dim_r);
    Belief(const ComplexMatrix &joint, std::size_t dim_s, std::size_t dim_r);
    static Belief without_register(const DensityOperator &state);

    const DensityOperator &joint() const {
        return joint_;
    }
    std::size_t dim_s() const {
        return dim_s_;
    }
    std::size_t dim_r() const {
        return dim_r_;
    }
    DensityOperator marginal_s() const;

    /// beta (x) ancilla, with the ancilla appended to the register.
    Belief tensor_ancilla(const DensityOperator &ancilla) const;
    /// (1 (x) V) beta (1 (x) V^dag) for an isometry V on the register.
    Belief apply_isometry_on_register(const ComplexMatrix &v) const;
    /// (id_S (x) P)(beta).
    Belief apply_channel_on_register(const QuantumChannel &p) const;

   private:
    DensityOperator joint_;
    std::size_t dim_s_;
    std::size_t dim_r_;
};

struct EnsembleMember {
    DensityOperator state;
    double probability;
};

class StateEnsemble {
   public:
    explicit StateEnsemble(std::vector<EnsembleMember> members);
    /// Pure members given as kets.
    static StateEnsemble from_kets(const std::vector<ComplexMatrix> &kets,
                                   const std::vector<double> &probabilities);

    const std::vector<EnsembleMember> &members() const {
        return members_;
    }
    std::size_t dim() const {
        return members_.front().state.dim();
    }
    /// sum_x p(x) rho_x
    DensityOperator average() const;

   private:
    std::vector<EnsembleMember> members_;
};

/// Block-diagonal belief sum_x p(x) rho_x (x) |x~><x~|.
Belief ensemble_to_belief(const StateEnsemble &ensemble);

enum class BuiltinBelief { flat, proper_01, improper_phi_plus, xyz_design, sic_design };

inline constexpr std::array<BuiltinBelief, 5> kAllBuiltinBeliefs = {
    BuiltinBelief::flat, BuiltinBelief::proper_01, BuiltinBelief::improper_phi_plus,
    BuiltinBelief::xyz_design, BuiltinBelief::sic_design};

Belief builtin_belief(BuiltinBelief name);
/// Canonical CLI name (beta-s, beta-1, beta-2, beta-xyz, beta-sic).
std::string_view builtin_belief_name(BuiltinBelief name);
/// Accepts the canonical names and the descriptive aliases (flat, proper_01,
/// improper-phi-plus, xyz_design, ...).
std::optional<BuiltinBelief> parse_builtin_belief(std::string_view name);

/// |0>, |1>, |+>, |->, |+i>, |-i>.
std::vector<ComplexMatrix> pauli_eigenkets();
/// Tetrahedral SIC kets; the first is |0>.
std::vector<ComplexMatrix> sic_kets();

StateEnsemble pauli_six_ensemble();
StateEnsemble sic_ensemble();

POVM z_basis_povm();
POVM x_basis_povm();
/// Tetrahedral SIC-POVM, F_k = |psi_k><psi_k| / 2.
POVM sic_povm();

/// (x, y, z) = (Tr[rho X], Tr[rho Y], Tr[rho Z]) for a 2x2 operator.
std::array<double, 3> bloch_vector(const ComplexMatrix &rho);
ComplexMatrix from_bloch(double x, double y, double z);

}  // namespace retro
