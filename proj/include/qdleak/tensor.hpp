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

#ifndef QDLEAK_TENSOR_HPP
#define QDLEAK_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdleak {

using complex = std::complex<double>;

/// Largest matrix/state dimension any operation will build unless told
/// otherwise.
inline constexpr std::size_t kDefaultDimensionLimit = std::size_t{1} << 14;

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const complex> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<complex> data() { return data_; }
    std::span<const complex> data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    complex trace() const;
    std::vector<complex> column(std::size_t c) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(complex s);

    /// Leading principal block of size n x n.
    ComplexMatrix leading_block(std::size_t n) const;

    double frobenius_norm() const;
    /// max_ij |this_ij - other_ij|; shapes must match.
    double max_abs_diff(const ComplexMatrix &other) const;
    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-10) const;

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(complex s, ComplexMatrix a);
std::vector<complex> operator*(const ComplexMatrix &a, std::span<const complex> v);

/// Pure state over an ordered list of subsystems.
struct StateVector {
    std::vector<complex> amplitudes;
    std::vector<std::size_t> dims;

    StateVector() = default;
    StateVector(std::vector<complex> amplitudes, std::vector<std::size_t> dims);

    /// |0...0> over the given subsystems.
    static StateVector zero(std::vector<std::size_t> dims);
    /// Tensor product of single-subsystem states, in order.
    static StateVector product(std::span<const std::vector<complex>> factors);

    std::size_t dimension() const { return amplitudes.size(); }
    double norm() const;

    bool operator==(const StateVector &other) const = default;
};

/// Density operator over an ordered list of subsystems.
struct DensityMatrix {
    ComplexMatrix matrix;
    std::vector<std::size_t> dims;

    DensityMatrix() = default;
    DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims);
    /// Single-subsystem density matrix.
    explicit DensityMatrix(ComplexMatrix matrix);

    static DensityMatrix pure(const StateVector &psi);

    std::size_t dimension() const { return matrix.rows(); }

    bool operator==(const DensityMatrix &other) const = default;
};

std::size_t product_of(std::span<const std::size_t> dims);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t dimension_limit = kDefaultDimensionLimit);
/// Left-to-right Kronecker product of all factors.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors,
                       std::size_t dimension_limit = kDefaultDimensionLimit);
std::vector<complex> kron(std::span<const complex> a, std::span<const complex> b,
                          std::size_t dimension_limit = kDefaultDimensionLimit);

/// Reduced state over `keep` (subsystems stay in original order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);

/// Reduced state of a pure state over `keep`. Cheaper than building |psi><psi|.
DensityMatrix reduced_density(const StateVector &psi, std::span<const std::size_t> keep);

/// Applies `op`, acting on the listed subsystems (in the listed order), to psi
/// in place.
void apply_operator(StateVector &psi, const ComplexMatrix &op, std::span<const std::size_t> targets);

/// Permutes and reshapes psi into a (prod dims[rows]) x (rest) matrix.
ComplexMatrix as_bipartite_matrix(const StateVector &psi, std::span<const std::size_t> rows);

namespace gates {
ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix cnot();
}  // namespace gates

namespace kets {
std::vector<complex> zero();
std::vector<complex> one();
std::vector<complex> plus();
std::vector<complex> minus();
}  // namespace kets

}  // namespace qdleak

#endif  // QDLEAK_TENSOR_HPP
