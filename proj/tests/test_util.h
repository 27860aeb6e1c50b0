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

// Shared helpers for the test binaries. The Eigen-based routines here are an
// independent route to the same quantities the library computes with its own
// Jacobi solver; tests compare the two.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "retro/linalg.h"

namespace retro::testing {

using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const ComplexMatrix &m) {
    EMat out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

inline ComplexMatrix from_eigen(const EMat &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

/// f applied to the spectrum of a Hermitian matrix, via Eigen.
template <typename F>
EMat eigen_spectral(const EMat &m, F f) {
    Eigen::SelfAdjointEigenSolver<EMat> solver(0.5 * (m + m.adjoint()));
    Eigen::VectorXd w = solver.eigenvalues();
    const double scale = w.cwiseAbs().maxCoeff();
    const double tau = static_cast<double>(m.rows()) * 1e-12 * scale;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w(i) = f(w(i), tau);
    }
    return solver.eigenvectors() * w.cast<std::complex<double>>().asDiagonal() *
           solver.eigenvectors().adjoint();
}

inline EMat eigen_sqrt(const EMat &m) {
    return eigen_spectral(m, [](double l, double tau) { return l > tau ? std::sqrt(l) : 0.0; });
}

inline EMat eigen_inv_sqrt(const EMat &m) {
    return eigen_spectral(m, [](double l, double tau) { return l > tau ? 1 / std::sqrt(l) : 0.0; });
}

inline EMat eigen_kron(const EMat &a, const EMat &b) {
    EMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Tr_B of an operator on A (x) B.
inline EMat eigen_trace_second(const EMat &m, Eigen::Index da, Eigen::Index db) {
    EMat out = EMat::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            for (Eigen::Index k = 0; k < db; ++k) {
                out(i, j) += m(i * db + k, j * db + k);
            }
        }
    }
    return out;
}

inline ComplexMatrix gaussian_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(rows, cols);
    for (auto &z : g.data()) {
        z = Complex(normal(rng), normal(rng));
    }
    return g;
}

/// Random PSD matrix G G^dag with the given rank.
inline ComplexMatrix random_psd(std::mt19937_64 &rng, std::size_t dim, std::size_t rank) {
    const auto g = gaussian_matrix(rng, dim, rank);
    return g * g.adjoint();
}

inline ComplexMatrix random_hermitian(std::mt19937_64 &rng, std::size_t dim) {
    const auto g = gaussian_matrix(rng, dim, dim);
    return hermitian_part(g);
}

#define EXPECT_MATRIX_NEAR(a, b, tol)                                                   \
    EXPECT_LE(::retro::frobenius_distance((a), (b)), (tol)) << "lhs:\n"                 \
                                                            << (a) << "\nrhs:\n"        \
                                                            << (b)

}  // namespace retro::testing
