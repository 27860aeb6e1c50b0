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

#include "retro/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "retro/errors.h"

namespace retro {

std::size_t dims_product(const Dims &dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatch("ComplexMatrix: " + std::to_string(entries_.size()) +
                                " entries for a " + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("ComplexMatrix: ragged initializer list");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::ket(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionMismatch("ket index " + std::to_string(index) + " out of range for dim " +
                                std::to_string(dim));
    }
    ComplexMatrix v(dim, 1);
    v(index, 0) = 1.0;
    return v;
}

ComplexMatrix ComplexMatrix::column(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    return ComplexMatrix(n, 1, std::move(amplitudes));
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
    if (i >= dim || j >= dim) {
        throw DimensionMismatch("matrix unit index out of range");
    }
    ComplexMatrix m(dim, dim);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto &z : out.entries_) {
        z = std::conj(z);
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionMismatch("trace of a non-square matrix");
    }
    Complex t{};
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

static void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()) + " differ");
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scalar) {
    for (auto &z : entries_) {
        z *= scalar;
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator/=(Complex scalar) {
    for (auto &z : entries_) {
        z /= scalar;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a) {
    a *= -1.0;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(ComplexMatrix a, Complex scalar) {
    a *= scalar;
    return a;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix a) {
    a *= scalar;
    return a;
}

ComplexMatrix operator/(ComplexMatrix a, Complex scalar) {
    a /= scalar;
    return a;
}

std::ostream &operator<<(std::ostream &out, const ComplexMatrix &m) {
    out << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r == 0 ? "[" : " [");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (c == 0 ? "" : ", ") << m(r, c).real() << (m(r, c).imag() < 0 ? "-" : "+")
                << std::abs(m(r, c).imag()) << "i";
        }
        out << "]" << (r + 1 < m.rows() ? "\n" : "");
    }
    return out << "]";
}

double frobenius_norm(const ComplexMatrix &m) {
    double s = 0;
    for (const auto &z : m.data()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    return frobenius_norm(a - b);
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    return frobenius_distance(a, b) <= tol;
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "hs_inner");
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a.data()[i]) * b.data()[i];
    }
    return s;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex x = a(ar, ac);
            if (x == Complex{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix outer(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != 1 || b.cols() != 1) {
        throw DimensionMismatch("outer: arguments must be single columns");
    }
    return a * b.adjoint();
}

ComplexMatrix projector(const ComplexMatrix &ket) {
    return outer(ket, ket);
}

double hermitian_asymmetry(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("hermitian_asymmetry: matrix is not square");
    }
    const double norm = frobenius_norm(m);
    if (norm == 0.0) {
        return 0.0;
    }
    return frobenius_distance(m, m.adjoint()) / norm;
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    return (m + m.adjoint()) * 0.5;
}

namespace {

double off_diagonal_norm2(const ComplexMatrix &a) {
    double s = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return s;
}

// One complex Jacobi rotation zeroing a(p, q). The unitary is
// G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on coordinates (p, q),
// where a(p, q) = |a(p, q)| e^{i phi}.
void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) {
        return;
    }
    const Complex phase = apq / mag;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex gqp = -s * std::conj(phase);  // G(q, p)
    const Complex gqq = c * std::conj(phase);   // G(q, q)
    const std::size_t n = a.rows();

    // a <- a G
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp + gqp * akq;
        a(k, q) = s * akp + gqq * akq;
    }
    // a <- G^dag a
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(gqp) * aqk;
        a(q, k) = s * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    // v <- v G
    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + gqp * vkq;
        v(k, q) = s * vkp + gqq * vkq;
    }
}

}  // namespace

HermitianEigensystem hermitian_eig(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("hermitian_eig: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
    const double asym = hermitian_asymmetry(m);
    if (asym > kHermitianTol) {
        throw NotHermitian("hermitian_eig: relative asymmetry " + std::to_string(asym) +
                               " exceeds tolerance",
                           asym);
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);

    // Entries below `negligible` are left alone; a sweep that rotates
    // nothing has converged.
    const double total = frobenius_norm(a);
    const double negligible = total * std::numeric_limits<double>::epsilon() * 1e-3;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (std::sqrt(off_diagonal_norm2(a)) <= negligible) {
            break;
        }
        int rotations = 0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > negligible) {
                    jacobi_rotate(a, v, p, q);
                    ++rotations;
                }
            }
        }
        if (rotations == 0) {
            break;
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });
    HermitianEigensystem eig;
    eig.eigenvalues.resize(n);
    eig.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        eig.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            eig.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return eig;
}

double HermitianEigensystem::cutoff() const {
    double scale = 0;
    for (double l : eigenvalues) {
        scale = std::max(scale, std::abs(l));
    }
    return static_cast<double>(eigenvalues.size()) * kSupportEps * scale;
}

std::size_t HermitianEigensystem::rank() const {
    const double tau = cutoff();
    return static_cast<std::size_t>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double l) { return l > tau; }));
}

double check_psd(const HermitianEigensystem &eig, const char *what) {
    if (eig.eigenvalues.empty()) {
        return 0.0;
    }
    const double lowest = eig.eigenvalues.back();
    if (lowest < -eig.cutoff()) {
        throw NotPSD(std::string(what) + ": eigenvalue " + std::to_string(lowest) +
                         " below the PSD cutoff",
                     lowest);
    }
    return lowest;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    const auto eig = hermitian_eig(m);
    check_psd(eig, "psd_sqrt");
    // Eigenvalues below tau are rounding noise on a null direction; their roots
    // (~1e-8) would otherwise leak into every product with the root.
    const double tau = eig.cutoff();
    return eig.apply([tau](double l) { return l > tau ? std::sqrt(l) : 0.0; });
}

ComplexMatrix support_inv_sqrt(const ComplexMatrix &m) {
    const auto eig = hermitian_eig(m);
    check_psd(eig, "support_inv_sqrt");
    if (eig.rank() == 0) {
        throw ZeroOperator("support_inv_sqrt: operator has empty support");
    }
    const double tau = eig.cutoff();
    return eig.apply([tau](double l) { return l > tau ? 1.0 / std::sqrt(l) : 0.0; });
}

ComplexMatrix support_projector(const ComplexMatrix &m) {
    const auto eig = hermitian_eig(m);
    const double tau = eig.cutoff();
    return eig.apply([tau](double l) { return l > tau ? 1.0 : 0.0; });
}

namespace {

struct TraceSplit {
    Dims kept_dims;
    std::vector<std::size_t> kept_index;    // full index -> kept index
    std::vector<std::size_t> traced_index;  // full index -> traced index
    std::size_t traced_size = 1;
};

TraceSplit split_indices(const Dims &dims, const std::vector<std::size_t> &traced,
                         std::size_t side) {
    if (dims_product(dims) != side) {
        throw DimensionMismatch("partial_trace: dims multiply to " +
                                std::to_string(dims_product(dims)) + " but the matrix side is " +
                                std::to_string(side));
    }
    std::vector<bool> is_traced(dims.size(), false);
    for (std::size_t t : traced) {
        if (t >= dims.size()) {
            throw DimensionMismatch("partial_trace: subsystem index " + std::to_string(t) +
                                    " out of range");
        }
        is_traced[t] = true;
    }
    TraceSplit split;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (is_traced[k]) {
            split.traced_size *= dims[k];
        } else {
            split.kept_dims.push_back(dims[k]);
        }
    }
    split.kept_index.resize(side);
    split.traced_index.resize(side);
    std::vector<std::size_t> digits(dims.size(), 0);
    for (std::size_t full = 0; full < side; ++full) {
        std::size_t kept = 0;
        std::size_t tr = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (is_traced[k]) {
                tr = tr * dims[k] + digits[k];
            } else {
                kept = kept * dims[k] + digits[k];
            }
        }
        split.kept_index[full] = kept;
        split.traced_index[full] = tr;
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (++digits[k] < dims[k]) {
                break;
            }
            digits[k] = 0;
        }
    }
    return split;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix &m, const Dims &dims,
                            const std::vector<std::size_t> &traced) {
    if (!m.is_square()) {
        throw DimensionMismatch("partial_trace: matrix is not square");
    }
    const auto split = split_indices(dims, traced, m.rows());
    const std::size_t kept = dims_product(split.kept_dims);
    ComplexMatrix out(kept, kept);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (split.traced_index[r] == split.traced_index[c]) {
                out(split.kept_index[r], split.kept_index[c]) += m(r, c);
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace_of_projector(const ComplexMatrix &v, const Dims &dims,
                                         const std::vector<std::size_t> &traced) {
    if (v.cols() != 1) {
        throw DimensionMismatch("partial_trace_of_projector: expected a single column");
    }
    const auto split = split_indices(dims, traced, v.rows());
    const std::size_t kept = dims_product(split.kept_dims);
    std::vector<std::vector<std::size_t>> groups(split.traced_size);
    for (std::size_t full = 0; full < v.rows(); ++full) {
        if (v(full, 0) != Complex{}) {
            groups[split.traced_index[full]].push_back(full);
        }
    }
    ComplexMatrix out(kept, kept);
    for (const auto &group : groups) {
        for (std::size_t r : group) {
            for (std::size_t c : group) {
                out(split.kept_index[r], split.kept_index[c]) += v(r, 0) * std::conj(v(c, 0));
            }
        }
    }
    return out;
}

ComplexMatrix double_ket(const ComplexMatrix &a, std::size_t dim_s, std::size_t dim_r) {
    const std::size_t side = dim_s * dim_r;
    if (!a.is_square() || a.rows() != side) {
        throw DimensionMismatch("double_ket: expected a square matrix of side " +
                                std::to_string(side));
    }
    // Row-major storage already enumerates (i,j,k,l) = ((i*dR + j), (k*dR + l))
    // in S,R,S',R' order.
    return ComplexMatrix::column(std::vector<Complex>(a.data().begin(), a.data().end()));
}

}  // namespace retro
