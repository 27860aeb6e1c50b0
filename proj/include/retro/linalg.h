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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace retro {

using Complex = std::complex<double>;

/// Subsystem factorization of a Hilbert space, outermost factor first.
using Dims = std::vector<std::size_t>;

std::size_t dims_product(const Dims &dims);

/// Dense complex matrix, row-major.
///
/// Kets are stored as single-column matrices. Comparisons are always done
/// through a norm with an explicit tolerance (see approx_equal); there is
/// deliberately no operator==.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// Basis ket |index> of a dim-dimensional space.
    static ComplexMatrix ket(std::size_t dim, std::size_t index);
    /// Single-column matrix holding `amplitudes`.
    static ComplexMatrix column(std::vector<Complex> amplitudes);
    /// |i><j| on a dim-dimensional space.
    static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    std::size_t size() const {
        return entries_.size();
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<Complex> data() {
        return entries_;
    }
    std::span<const Complex> data() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scalar);
    ComplexMatrix &operator/=(Complex scalar);

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator/(ComplexMatrix a, Complex scalar);

std::ostream &operator<<(std::ostream &out, const ComplexMatrix &m);

double frobenius_norm(const ComplexMatrix &m);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Shapes match and ||a - b||_F <= tol.
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol);

/// Hilbert-Schmidt inner product Tr[a^dag b].
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
/// |a><b| for single-column a, b.
ComplexMatrix outer(const ComplexMatrix &a, const ComplexMatrix &b);
/// a * b^dag for the single-column case; v v^dag.
ComplexMatrix projector(const ComplexMatrix &ket);

/// ||m - m^dag||_F / ||m||_F (0 for the zero matrix).
double hermitian_asymmetry(const ComplexMatrix &m);
/// (m + m^dag) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix &m);

inline constexpr double kHermitianTol = 1e-10;
/// Relative eigenvalue cutoff factor: tau = dim * kSupportEps * lambda_max.
inline constexpr double kSupportEps = 1e-12;

struct HermitianEigensystem {
    /// Sorted descending.
    std::vector<double> eigenvalues;
    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    ComplexMatrix eigenvectors;

    /// V diag(f(lambda)) V^dag.
    template <typename F>
    ComplexMatrix apply(F &&f) const;

    /// Support cutoff tau = dim * 1e-12 * max|lambda|.
    double cutoff() const;
    /// Number of eigenvalues above the cutoff.
    std::size_t rank() const;
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Throws NotHermitian when the relative asymmetry exceeds kHermitianTol; the
/// Hermitian part is decomposed otherwise.
HermitianEigensystem hermitian_eig(const ComplexMatrix &m);

/// Principal square root of a PSD matrix. Eigenvalues in [-tau, tau] count as
/// zero; anything below -tau throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

/// Inverse square root restricted to the support: lambda > tau maps to
/// lambda^{-1/2}, everything else to 0. Throws ZeroOperator for an
/// (effectively) zero input.
ComplexMatrix support_inv_sqrt(const ComplexMatrix &m);

/// Orthogonal projector onto the eigenvectors with lambda > tau.
ComplexMatrix support_projector(const ComplexMatrix &m);

/// Smallest eigenvalue; throws NotPSD if below -tau.
double check_psd(const HermitianEigensystem &eig, const char *what);

/// Partial trace of `m` over the subsystems listed in `traced`.
///
/// `dims` gives the factorization of the row (= column) space; the kept
/// subsystems retain their relative order.
ComplexMatrix partial_trace(const ComplexMatrix &m, const Dims &dims,
                            const std::vector<std::size_t> &traced);

/// Tr_traced[|v><v|] for a single-column v, computed without forming the
/// full outer product.
ComplexMatrix partial_trace_of_projector(const ComplexMatrix &v, const Dims &dims,
                                         const std::vector<std::size_t> &traced);

/// Vectorization |A>> on S (x) R (x) S' (x) R' with component <i,j|A|k,l> at
/// basis index (i,j,k,l). Returns a (dS*dR)^2 x 1 column.
ComplexMatrix double_ket(const ComplexMatrix &a, std::size_t dim_s, std::size_t dim_r);

template <typename F>
ComplexMatrix HermitianEigensystem::apply(F &&f) const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = f(eigenvalues[k]);
        if (w == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const Complex vr = eigenvectors(r, k) * w;
            if (vr == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(eigenvectors(c, k));
            }
        }
    }
    return out;
}

}  // namespace retro
