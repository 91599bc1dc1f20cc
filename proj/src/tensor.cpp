// Copyright 2026 The qdleak Authors
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

#include "qdleak/tensor.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdleak/errors.hpp"

namespace qdleak {

namespace {

void check_limit(std::size_t dim, std::size_t limit) {
    if (dim > limit) {
        throw DimensionLimitError("dimension " + std::to_string(dim) + " exceeds limit " +
                                  std::to_string(limit));
    }
}

void check_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ArgumentError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

// Row-major strides for a subsystem dimension list.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * dims[i];
    }
    return strides;
}

void check_subsystems(std::span<const std::size_t> dims, std::span<const std::size_t> picked, bool allow_empty) {
    if (picked.empty() && !allow_empty) {
        throw ArgumentError("subsystem selection must be nonempty");
    }
    std::vector<bool> seen(dims.size(), false);
    for (auto s : picked) {
        if (s >= dims.size()) {
            throw ArgumentError("subsystem index " + std::to_string(s) + " out of range (" +
                                std::to_string(dims.size()) + " subsystems)");
        }
        if (seen[s]) {
            throw ArgumentError("subsystem index " + std::to_string(s) + " repeated");
        }
        seen[s] = true;
    }
}

// Offsets (into the flat index space) of every combination of the picked
// subsystems' local indices, enumerated in row-major order of `picked`.
std::vector<std::size_t> offsets_for(std::span<const std::size_t> dims, std::span<const std::size_t> strides,
                                     std::span<const std::size_t> picked) {
    std::vector<std::size_t> offsets{0};
    for (auto s : picked) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[s]);
        for (auto base : offsets) {
            for (std::size_t j = 0; j < dims[s]; ++j) {
                next.push_back(base + j * strides[s]);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

std::vector<std::size_t> complement_of(std::size_t n, std::span<const std::size_t> picked) {
    std::vector<bool> in(n, false);
    for (auto s : picked) in[s] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in[i]) rest.push_back(i);
    }
    return rest;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw ArgumentError("entry count " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw ArgumentError("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            m(r, c) = v[r] * std::conj(v[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

complex ComplexMatrix::trace() const {
    complex t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

std::vector<complex> ComplexMatrix::column(std::size_t c) const {
    std::vector<complex> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    check_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    check_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(complex s) {
    for (auto &x : data_) x *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::leading_block(std::size_t n) const {
    if (n > rows_ || n > cols_) {
        throw ArgumentError("leading block larger than matrix");
    }
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_), n,
                    m.data_.begin() + static_cast<std::ptrdiff_t>(r * n));
    }
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto &x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    check_same_shape(*this, other, "compare");
    double worst = 0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
        }
    }
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    return (adjoint() * *this).max_abs_diff(identity(rows_)) <= tol;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ArgumentError("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + " differ");
    }
    using Dense = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    ComplexMatrix out(a.rows(), b.cols());
    const auto rows = static_cast<Eigen::Index>(a.rows());
    const auto inner = static_cast<Eigen::Index>(a.cols());
    const auto cols = static_cast<Eigen::Index>(b.cols());
    Eigen::Map<Dense>(out.data().data(), rows, cols).noalias() =
        Eigen::Map<const Dense>(a.data().data(), rows, inner) * Eigen::Map<const Dense>(b.data().data(), inner, cols);
    return out;
}

ComplexMatrix operator*(complex s, ComplexMatrix a) {
    a *= s;
    return a;
}

std::vector<complex> operator*(const ComplexMatrix &a, std::span<const complex> v) {
    if (a.cols() != v.size()) {
        throw ArgumentError("matrix-vector: dimension mismatch");
    }
    std::vector<complex> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        complex s = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
        out[i] = s;
    }
    return out;
}

std::size_t product_of(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

StateVector::StateVector(std::vector<complex> amps, std::vector<std::size_t> subsystem_dims)
    : amplitudes(std::move(amps)), dims(std::move(subsystem_dims)) {
    if (dims.empty() || std::ranges::any_of(dims, [](std::size_t d) { return d == 0; })) {
        throw ArgumentError("subsystem dims must be a nonempty list of positive integers");
    }
    if (amplitudes.size() != product_of(dims)) {
        throw ArgumentError("amplitude count " + std::to_string(amplitudes.size()) +
                            " does not match product of subsystem dims " + std::to_string(product_of(dims)));
    }
}

StateVector StateVector::zero(std::vector<std::size_t> dims) {
    std::vector<complex> amps(product_of(dims));
    if (!amps.empty()) amps[0] = 1.0;
    return {std::move(amps), std::move(dims)};
}

StateVector StateVector::product(std::span<const std::vector<complex>> factors) {
    if (factors.empty()) {
        throw ArgumentError("product state needs at least one factor");
    }
    std::vector<complex> amps = factors[0];
    std::vector<std::size_t> dims{factors[0].size()};
    for (std::size_t i = 1; i < factors.size(); ++i) {
        amps = kron(std::span<const complex>(amps), std::span<const complex>(factors[i]));
        dims.push_back(factors[i].size());
    }
    return {std::move(amps), std::move(dims)};
}

double StateVector::norm() const {
    double s = 0;
    for (const auto &a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims)
    : matrix(std::move(m)), dims(std::move(subsystem_dims)) {
    if (!matrix.is_square()) {
        throw ArgumentError("density matrix must be square");
    }
    if (product_of(dims) != matrix.rows()) {
        throw ArgumentError("density matrix dimension does not match subsystem dims");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(m, {m.rows()}) {}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return {ComplexMatrix::outer(psi.amplitudes), psi.dims};
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t dimension_limit) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    check_limit(std::max(rows, cols), dimension_limit);
    ComplexMatrix out(rows, cols);
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const complex s = a(ar, ac);
            if (s == complex{}) continue;
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors, std::size_t dimension_limit) {
    if (factors.empty()) {
        return ComplexMatrix::identity(1);
    }
    ComplexMatrix out = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = kron(out, factors[i], dimension_limit);
    }
    return out;
}

std::vector<complex> kron(std::span<const complex> a, std::span<const complex> b, std::size_t dimension_limit) {
    check_limit(a.size() * b.size(), dimension_limit);
    std::vector<complex> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) out.push_back(x * y);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    check_subsystems(rho.dims, keep, false);
    const auto rest = complement_of(rho.dims.size(), keep);
    const auto strides = strides_of(rho.dims);
    const auto keep_offsets = offsets_for(rho.dims, strides, keep);
    const auto rest_offsets = offsets_for(rho.dims, strides, rest);

    const std::size_t n = keep_offsets.size();
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            complex s = 0;
            for (auto e : rest_offsets) {
                s += rho.matrix(keep_offsets[r] + e, keep_offsets[c] + e);
            }
            out(r, c) = s;
        }
    }
    std::vector<std::size_t> kept_dims;
    for (auto k : keep) kept_dims.push_back(rho.dims[k]);
    return {std::move(out), std::move(kept_dims)};
}

ComplexMatrix as_bipartite_matrix(const StateVector &psi, std::span<const std::size_t> rows) {
    check_subsystems(psi.dims, rows, true);
    const auto rest = complement_of(psi.dims.size(), rows);
    const auto strides = strides_of(psi.dims);
    const auto row_offsets = offsets_for(psi.dims, strides, rows);
    const auto col_offsets = offsets_for(psi.dims, strides, rest);
    ComplexMatrix m(row_offsets.size(), col_offsets.size());
    for (std::size_t r = 0; r < row_offsets.size(); ++r) {
        for (std::size_t c = 0; c < col_offsets.size(); ++c) {
            m(r, c) = psi.amplitudes[row_offsets[r] + col_offsets[c]];
        }
    }
    return m;
}

DensityMatrix reduced_density(const StateVector &psi, std::span<const std::size_t> keep) {
    check_subsystems(psi.dims, keep, false);
    const ComplexMatrix m = as_bipartite_matrix(psi, keep);
    // rho = M M^dagger, filled as a Hermitian matrix.
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            complex s = 0;
            for (std::size_t j = 0; j < k; ++j) s += m(r, j) * std::conj(m(c, j));
            out(r, c) = s;
            out(c, r) = std::conj(s);
        }
        out(r, r) = out(r, r).real();
    }
    std::vector<std::size_t> kept_dims;
    for (auto s : keep) kept_dims.push_back(psi.dims[s]);
    return {std::move(out), std::move(kept_dims)};
}

void apply_operator(StateVector &psi, const ComplexMatrix &op, std::span<const std::size_t> targets) {
    check_subsystems(psi.dims, targets, false);
    const auto strides = strides_of(psi.dims);
    const auto local = offsets_for(psi.dims, strides, targets);
    if (!op.is_square() || op.rows() != local.size()) {
        throw ArgumentError("operator dimension " + std::to_string(op.rows()) + " does not match targets (" +
                            std::to_string(local.size()) + ")");
    }
    const auto rest = complement_of(psi.dims.size(), targets);
    const auto outer = offsets_for(psi.dims, strides, rest);

    const std::size_t d = local.size();
    std::vector<complex> gathered(d);
    for (auto base : outer) {
        for (std::size_t i = 0; i < d; ++i) gathered[i] = psi.amplitudes[base + local[i]];
        for (std::size_t i = 0; i < d; ++i) {
            complex s = 0;
            for (std::size_t j = 0; j < d; ++j) s += op(i, j) * gathered[j];
            psi.amplitudes[base + local[i]] = s;
        }
    }
}

namespace gates {

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }

ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{h, h}, {h, -h}};
}

ComplexMatrix cnot() {
    return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

}  // namespace gates

namespace kets {

std::vector<complex> zero() { return {1.0, 0.0}; }
std::vector<complex> one() { return {0.0, 1.0}; }
std::vector<complex> plus() { return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}; }
std::vector<complex> minus() { return {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}; }

}  // namespace kets

}  // namespace qdleak
