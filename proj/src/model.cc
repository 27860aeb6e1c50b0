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

#include "retro/model.h"

#include <cmath>
#include <numbers>
#include <string>

#include "retro/errors.h"

namespace retro {

namespace {

std::string shape(const ComplexMatrix &m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(const ComplexMatrix &matrix)
    : DensityOperator(matrix, Dims{matrix.rows()}) {
}

DensityOperator::DensityOperator(const ComplexMatrix &matrix, Dims dims)
    : dims_(std::move(dims)) {
    if (!matrix.is_square()) {
        throw DimensionMismatch("DensityOperator: matrix is " + shape(matrix));
    }
    if (dims_product(dims_) != matrix.rows()) {
        throw DimensionMismatch("DensityOperator: dims do not multiply to the matrix side " +
                                std::to_string(matrix.rows()));
    }
    const double asym = hermitian_asymmetry(matrix);
    if (asym > kHermitianTol) {
        throw NotHermitian("DensityOperator: matrix is not Hermitian (relative asymmetry " +
                               std::to_string(asym) + ")",
                           asym);
    }
    matrix_ = hermitian_part(matrix);
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw InvalidState("DensityOperator: trace is " + std::to_string(tr) + ", expected 1");
    }
    check_psd(hermitian_eig(matrix_), "DensityOperator");
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    return DensityOperator(ComplexMatrix::identity(dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::pure(const ComplexMatrix &ket) {
    return DensityOperator(projector(ket));
}

bool DensityOperator::is_pure(double tol) const {
    const double purity = hs_inner(matrix_, matrix_).real();
    return std::abs(purity - 1.0) <= tol;
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus_ops, double tol)
    : kraus_(std::move(kraus_ops)) {
    if (kraus_.empty()) {
        throw InvalidChannel("QuantumChannel: empty Kraus set");
    }
    dim_out_ = kraus_.front().rows();
    dim_in_ = kraus_.front().cols();
    if (dim_in_ == 0 || dim_out_ == 0) {
        throw InvalidChannel("QuantumChannel: zero-dimensional Kraus operator");
    }
    ComplexMatrix completeness(dim_in_, dim_in_);
    for (const auto &k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_) {
            throw DimensionMismatch("QuantumChannel: Kraus operators of shapes " +
                                    shape(kraus_.front()) + " and " + shape(k));
        }
        completeness += k.adjoint() * k;
    }
    const double tp_error = frobenius_distance(completeness, ComplexMatrix::identity(dim_in_));
    if (tp_error > tol) {
        throw InvalidChannel("QuantumChannel: not trace preserving (||sum K^dag K - 1||_F = " +
                             std::to_string(tp_error) + ")");
    }
    try {
        check_psd(hermitian_eig(choi()), "QuantumChannel Choi matrix");
    } catch (const NotPSD &e) {
        throw InvalidChannel(std::string("QuantumChannel: not completely positive: ") + e.what());
    }
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
    return QuantumChannel({ComplexMatrix::identity(dim)});
}

QuantumChannel QuantumChannel::unitary(const ComplexMatrix &u) {
    if (!u.is_square()) {
        throw DimensionMismatch("QuantumChannel::unitary: matrix is " + shape(u));
    }
    return QuantumChannel({u});
}

QuantumChannel QuantumChannel::isometry(const ComplexMatrix &v) {
    return QuantumChannel({v});
}

QuantumChannel QuantumChannel::depolarizing(std::size_t dim, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidChannel("depolarizing: p must lie in [0, 1], got " + std::to_string(p));
    }
    // (1 - p) rho + (p / d) sum_{ab} |a><b| rho |b><a|
    std::vector<ComplexMatrix> kraus;
    if (p < 1.0) {
        kraus.push_back(ComplexMatrix::identity(dim) * std::sqrt(1.0 - p));
    }
    if (p > 0.0) {
        const double w = std::sqrt(p / static_cast<double>(dim));
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) {
                kraus.push_back(ComplexMatrix::unit(dim, a, b) * w);
            }
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::replacement(std::size_t dim_in, const DensityOperator &target) {
    const auto eig = hermitian_eig(target.matrix());
    const double tau = eig.cutoff();
    std::vector<ComplexMatrix> kraus;
    const std::size_t d_out = target.dim();
    for (std::size_t m = 0; m < d_out; ++m) {
        const double l = eig.eigenvalues[m];
        if (l <= tau) {
            continue;
        }
        for (std::size_t j = 0; j < dim_in; ++j) {
            ComplexMatrix k(d_out, dim_in);
            for (std::size_t a = 0; a < d_out; ++a) {
                k(a, j) = std::sqrt(l) * eig.eigenvectors(a, m);
            }
            kraus.push_back(std::move(k));
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::from_choi(const ComplexMatrix &choi, std::size_t dim_in,
                                         std::size_t dim_out, double tol) {
    if (!choi.is_square() || choi.rows() != dim_in * dim_out) {
        throw DimensionMismatch("from_choi: Choi matrix is " + shape(choi) + ", expected side " +
                                std::to_string(dim_in * dim_out));
    }
    const auto eig = hermitian_eig(choi);
    try {
        check_psd(eig, "from_choi");
    } catch (const NotPSD &e) {
        throw InvalidChannel(std::string("from_choi: not completely positive: ") + e.what());
    }
    const double tau = eig.cutoff();
    std::vector<ComplexMatrix> kraus;
    for (std::size_t m = 0; m < eig.eigenvalues.size(); ++m) {
        const double l = eig.eigenvalues[m];
        if (l <= tau) {
            continue;
        }
        // Eigenvector component (i, a) of in (x) out becomes K(a, i).
        ComplexMatrix k(dim_out, dim_in);
        for (std::size_t i = 0; i < dim_in; ++i) {
            for (std::size_t a = 0; a < dim_out; ++a) {
                k(a, i) = std::sqrt(l) * eig.eigenvectors(i * dim_out + a, m);
            }
        }
        kraus.push_back(std::move(k));
    }
    if (kraus.empty()) {
        throw InvalidChannel("from_choi: zero Choi matrix");
    }
    return QuantumChannel(std::move(kraus), tol);
}

QuantumChannel QuantumChannel::mixture(const std::vector<QuantumChannel> &channels,
                                       const std::vector<double> &weights) {
    if (channels.empty() || channels.size() != weights.size()) {
        throw InvalidChannel("mixture: need one weight per channel");
    }
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (weights[i] < 0) {
            throw InvalidChannel("mixture: negative weight");
        }
        if (weights[i] == 0) {
            continue;
        }
        for (const auto &k : channels[i].kraus_ops()) {
            kraus.push_back(k * std::sqrt(weights[i]));
        }
    }
    return QuantumChannel(std::move(kraus));
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix &x) const {
    if (!x.is_square() || x.rows() != dim_in_) {
        throw DimensionMismatch("channel input is " + shape(x) + ", channel dim_in is " +
                                std::to_string(dim_in_));
    }
    ComplexMatrix out(dim_out_, dim_out_);
    for (const auto &k : kraus_) {
        out += k * x * k.adjoint();
    }
    return out;
}

ComplexMatrix QuantumChannel::adjoint_apply(const ComplexMatrix &y) const {
    if (!y.is_square() || y.rows() != dim_out_) {
        throw DimensionMismatch("adjoint input is " + shape(y) + ", channel dim_out is " +
                                std::to_string(dim_out_));
    }
    ComplexMatrix out(dim_in_, dim_in_);
    for (const auto &k : kraus_) {
        out += k.adjoint() * y * k;
    }
    return out;
}

ComplexMatrix QuantumChannel::choi() const {
    const std::size_t n = dim_in_ * dim_out_;
    ComplexMatrix j(n, n);
    for (const auto &k : kraus_) {
        // |K>> with component K(a, i) at index (i, a).
        for (std::size_t i = 0; i < dim_in_; ++i) {
            for (std::size_t a = 0; a < dim_out_; ++a) {
                const Complex x = k(a, i);
                if (x == Complex{}) {
                    continue;
                }
                for (std::size_t jj = 0; jj < dim_in_; ++jj) {
                    for (std::size_t b = 0; b < dim_out_; ++b) {
                        j(i * dim_out_ + a, jj * dim_out_ + b) += x * std::conj(k(b, jj));
                    }
                }
            }
        }
    }
    return j;
}

QuantumChannel QuantumChannel::then(const QuantumChannel &next) const {
    if (next.dim_in_ != dim_out_) {
        throw DimensionMismatch("then: output dimension " + std::to_string(dim_out_) +
                                " does not match next input " + std::to_string(next.dim_in_));
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(kraus_.size() * next.kraus_.size());
    for (const auto &b : next.kraus_) {
        for (const auto &a : kraus_) {
            kraus.push_back(b * a);
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::extend_right(std::size_t dim) const {
    std::vector<ComplexMatrix> kraus;
    for (const auto &k : kraus_) {
        kraus.push_back(kron(k, ComplexMatrix::identity(dim)));
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::extend_left(std::size_t dim) const {
    std::vector<ComplexMatrix> kraus;
    for (const auto &k : kraus_) {
        kraus.push_back(kron(ComplexMatrix::identity(dim), k));
    }
    return QuantumChannel(std::move(kraus));
}

DensityOperator apply_channel(const QuantumChannel &e, const DensityOperator &rho) {
    return DensityOperator(e.apply(rho.matrix()));
}

ComplexMatrix adjoint_apply(const QuantumChannel &e, const ComplexMatrix &y) {
    return e.adjoint_apply(y);
}

// ---------------------------------------------------------------------------
// POVM

POVM::POVM(std::vector<ComplexMatrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw InvalidPOVM("POVM: no effects");
    }
    const std::size_t d = effects_.front().rows();
    ComplexMatrix total(d, d);
    for (std::size_t x = 0; x < effects_.size(); ++x) {
        const auto &f = effects_[x];
        if (!f.is_square() || f.rows() != d) {
            throw InvalidPOVM("POVM: effect " + std::to_string(x) + " is " + shape(f));
        }
        try {
            check_psd(hermitian_eig(f), "POVM effect");
        } catch (const ValidationError &e) {
            throw InvalidPOVM("POVM: effect " + std::to_string(x) + " is not PSD: " + e.what());
        }
        total += f;
    }
    const double err = frobenius_distance(total, ComplexMatrix::identity(d));
    if (err > kChannelTol) {
        throw InvalidPOVM("POVM: effects sum to identity only within " + std::to_string(err));
    }
}

POVM POVM::from_basis(const ComplexMatrix &basis) {
    std::vector<ComplexMatrix> effects;
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        ComplexMatrix v(basis.rows(), 1);
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            v(r, 0) = basis(r, c);
        }
        effects.push_back(projector(v));
    }
    return POVM(std::move(effects));
}

QuantumChannel measurement_channel(const POVM &povm) {
    const std::size_t d = povm.dim();
    const std::size_t n = povm.size();
    std::vector<ComplexMatrix> kraus;
    for (std::size_t x = 0; x < n; ++x) {
        const auto root = psd_sqrt(povm.effects()[x]);
        for (std::size_t j = 0; j < d; ++j) {
            // |x~><j| sqrt(F_x)
            ComplexMatrix k(n, d);
            double weight = 0;
            for (std::size_t c = 0; c < d; ++c) {
                k(x, c) = root(j, c);
                weight += std::norm(root(j, c));
            }
            if (weight > 0) {
                kraus.push_back(std::move(k));
            }
        }
    }
    return QuantumChannel(std::move(kraus));
}

// ---------------------------------------------------------------------------
// Belief

Belief::Belief(const DensityOperator &joint, std::size_t dim_s, std::size_t dim_r)
    : joint_(joint.matrix(), Dims{dim_s, dim_r}), dim_s_(dim_s), dim_r_(dim_r) {
}

Belief::Belief(const ComplexMatrix &joint, std::size_t dim_s, std::size_t dim_r)
    : joint_(joint, Dims{dim_s, dim_r}), dim_s_(dim_s), dim_r_(dim_r) {
}

Belief Belief::without_register(const DensityOperator &state) {
    return Belief(state, state.dim(), 1);
}

DensityOperator Belief::marginal_s() const {
    return DensityOperator(partial_trace(joint_.matrix(), {dim_s_, dim_r_}, {1}));
}

Belief Belief::tensor_ancilla(const DensityOperator &ancilla) const {
    return Belief(kron(joint_.matrix(), ancilla.matrix()), dim_s_, dim_r_ * ancilla.dim());
}

Belief Belief::apply_isometry_on_register(const ComplexMatrix &v) const {
    if (v.cols() != dim_r_) {
        throw DimensionMismatch("apply_isometry_on_register: isometry is " + shape(v) +
                                ", register dimension is " + std::to_string(dim_r_));
    }
    const auto w = kron(ComplexMatrix::identity(dim_s_), v);
    return Belief(w * joint_.matrix() * w.adjoint(), dim_s_, v.rows());
}

Belief Belief::apply_channel_on_register(const QuantumChannel &p) const {
    if (p.dim_in() != dim_r_) {
        throw DimensionMismatch("apply_channel_on_register: channel input " +
                                std::to_string(p.dim_in()) + " vs register " +
                                std::to_string(dim_r_));
    }
    return Belief(p.extend_left(dim_s_).apply(joint_.matrix()), dim_s_, p.dim_out());
}

// ---------------------------------------------------------------------------
// Ensembles

StateEnsemble::StateEnsemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw EmptyEnsemble("StateEnsemble: no members");
    }
    double total = 0;
    for (const auto &m : members_) {
        if (m.state.dim() != members_.front().state.dim()) {
            throw DimensionMismatch("StateEnsemble: members of different dimension");
        }
        if (!(m.probability >= 0.0 && m.probability <= 1.0)) {
            throw InvalidDistribution("StateEnsemble: probability " +
                                      std::to_string(m.probability) + " outside [0, 1]");
        }
        total += m.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTol) {
        throw InvalidDistribution("StateEnsemble: probabilities sum to " + std::to_string(total));
    }
}

StateEnsemble StateEnsemble::from_kets(const std::vector<ComplexMatrix> &kets,
                                       const std::vector<double> &probabilities) {
    if (kets.size() != probabilities.size()) {
        throw DimensionMismatch("from_kets: one probability per ket required");
    }
    std::vector<EnsembleMember> members;
    for (std::size_t i = 0; i < kets.size(); ++i) {
        members.push_back({DensityOperator::pure(kets[i]), probabilities[i]});
    }
    return StateEnsemble(std::move(members));
}

DensityOperator StateEnsemble::average() const {
    ComplexMatrix avg(dim(), dim());
    for (const auto &m : members_) {
        avg += m.state.matrix() * m.probability;
    }
    return DensityOperator(avg);
}

Belief ensemble_to_belief(const StateEnsemble &ensemble) {
    const std::size_t d = ensemble.dim();
    const std::size_t n = ensemble.members().size();
    ComplexMatrix joint(d * n, d * n);
    for (std::size_t x = 0; x < n; ++x) {
        const auto &m = ensemble.members()[x];
        joint += kron(m.state.matrix(), ComplexMatrix::unit(n, x, x)) * m.probability;
    }
    return Belief(joint, d, n);
}

// ---------------------------------------------------------------------------
// Built-in objects

std::vector<ComplexMatrix> pauli_eigenkets() {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    return {
        ComplexMatrix::column({1, 0}),      ComplexMatrix::column({0, 1}),
        ComplexMatrix::column({h, h}),      ComplexMatrix::column({h, -h}),
        ComplexMatrix::column({h, i * h}),  ComplexMatrix::column({h, -i * h}),
    };
}

std::vector<ComplexMatrix> sic_kets() {
    // Bloch vectors (0,0,1) and three at polar cos(theta) = -1/3, azimuth 0, 2pi/3, 4pi/3.
    std::vector<ComplexMatrix> kets{ComplexMatrix::column({1, 0})};
    const double theta = std::acos(-1.0 / 3.0);
    for (int k = 0; k < 3; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 3.0;
        kets.push_back(ComplexMatrix::column(
            {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}));
    }
    return kets;
}

StateEnsemble pauli_six_ensemble() {
    return StateEnsemble::from_kets(pauli_eigenkets(), std::vector<double>(6, 1.0 / 6.0));
}

StateEnsemble sic_ensemble() {
    return StateEnsemble::from_kets(sic_kets(), std::vector<double>(4, 0.25));
}

POVM z_basis_povm() {
    return POVM::from_basis(ComplexMatrix::identity(2));
}

POVM x_basis_povm() {
    const double h = 1.0 / std::sqrt(2.0);
    return POVM::from_basis(ComplexMatrix{{h, h}, {h, -h}});
}

POVM sic_povm() {
    std::vector<ComplexMatrix> effects;
    for (const auto &k : sic_kets()) {
        effects.push_back(projector(k) * 0.5);
    }
    return POVM(std::move(effects));
}

Belief builtin_belief(BuiltinBelief name) {
    switch (name) {
        case BuiltinBelief::flat:
            return Belief::without_register(DensityOperator::maximally_mixed(2));
        case BuiltinBelief::proper_01:
            return ensemble_to_belief(StateEnsemble::from_kets(
                {ComplexMatrix::ket(2, 0), ComplexMatrix::ket(2, 1)}, {0.5, 0.5}));
        case BuiltinBelief::improper_phi_plus: {
            const double h = 1.0 / std::sqrt(2.0);
            return Belief(projector(ComplexMatrix::column({h, 0, 0, h})), 2, 2);
        }
        case BuiltinBelief::xyz_design:
            return ensemble_to_belief(pauli_six_ensemble());
        case BuiltinBelief::sic_design:
            return ensemble_to_belief(sic_ensemble());
    }
    throw ValidationError("unknown built-in belief");
}

std::string_view builtin_belief_name(BuiltinBelief name) {
    switch (name) {
        case BuiltinBelief::flat:
            return "beta-s";
        case BuiltinBelief::proper_01:
            return "beta-1";
        case BuiltinBelief::improper_phi_plus:
            return "beta-2";
        case BuiltinBelief::xyz_design:
            return "beta-xyz";
        case BuiltinBelief::sic_design:
            return "beta-sic";
    }
    return "?";
}

std::optional<BuiltinBelief> parse_builtin_belief(std::string_view name) {
    std::string key(name);
    for (auto &ch : key) {
        if (ch == '_') {
            ch = '-';
        }
    }
    if (key == "beta-s" || key == "flat") return BuiltinBelief::flat;
    if (key == "beta-1" || key == "proper-01") return BuiltinBelief::proper_01;
    if (key == "beta-2" || key == "improper-phi-plus") return BuiltinBelief::improper_phi_plus;
    if (key == "beta-xyz" || key == "xyz-design" || key == "beta-haar")
        return BuiltinBelief::xyz_design;
    if (key == "beta-sic" || key == "sic-design") return BuiltinBelief::sic_design;
    return std::nullopt;
}

std::array<double, 3> bloch_vector(const ComplexMatrix &rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw DimensionMismatch("bloch_vector: expected a 2x2 operator, got " + shape(rho));
    }
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

ComplexMatrix from_bloch(double x, double y, double z) {
    return ComplexMatrix{{(1 + z) / 2, Complex(x, -y) / 2.0}, {Complex(x, y) / 2.0, (1 - z) / 2}};
}

}  // namespace retro
