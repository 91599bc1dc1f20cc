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

#include "qdleak/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "qdleak/errors.hpp"

namespace qdleak {

namespace {

using EigenMatrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_hermitian(const ComplexMatrix &h, const char *what) {
    if (!h.is_square()) {
        throw ArgumentError(std::string(what) + ": matrix is not square");
    }
    if (!h.is_hermitian(kHermitianTolerance)) {
        throw ArgumentError(std::string(what) + ": matrix is not Hermitian");
    }
}

Eigen::Map<const EigenMatrix> view(const ComplexMatrix &m) {
    return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

}  // namespace

HermEig herm_eig(const ComplexMatrix &h) {
    require_hermitian(h, "herm_eig");
    const std::size_t n = h.rows();
    // Eigen reads only the lower triangle; symmetrize so both halves count.
    const EigenMatrix sym = 0.5 * (view(h) + view(h).adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalContractError("herm_eig: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    HermEig out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = static_cast<Eigen::Index>(n - 1 - i);
        out.values[i] = solver.eigenvalues()(src);
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, i) = solver.eigenvectors()(static_cast<Eigen::Index>(r), src);
        }
    }
    return out;
}

std::vector<double> herm_eigenvalues(const ComplexMatrix &h) {
    require_hermitian(h, "herm_eigenvalues");
    const EigenMatrix sym = 0.5 * (view(h) + view(h).adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalContractError("herm_eigenvalues: eigensolver did not converge");
    }
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
    std::ranges::reverse(values);
    return values;
}

double trace_norm(const ComplexMatrix &h) {
    double s = 0;
    for (double v : herm_eigenvalues(h)) s += std::abs(v);
    return s;
}

ComplexMatrix orthonormalize_qr(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw ArgumentError("orthonormalize_qr: matrix is not square");
    }
    const std::size_t n = m.rows();
    // Relative threshold: a column whose residual after projection falls below
    // this fraction of the matrix scale counts as dependent.
    const double scale = std::max(m.frobenius_norm(), 1e-300);
    const double threshold = 1e-12 * scale;

    ComplexMatrix q(n, n);
    std::vector<complex> v(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) v[r] = m(r, c);
        // Modified Gram-Schmidt, applied twice for stability at near-degenerate
        // inputs; the second pass only removes rounding residue.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < c; ++k) {
                complex proj = 0;
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, k)) * v[r];
                for (std::size_t r = 0; r < n; ++r) v[r] -= proj * q(r, k);
            }
        }
        double norm = 0;
        for (const auto &x : v) norm += std::norm(x);
        norm = std::sqrt(norm);
        if (norm <= threshold) {
            throw DegeneracyError("orthonormalize_qr: column " + std::to_string(c) +
                                  " is linearly dependent on the preceding columns");
        }
        // Dividing by the (positive) residual norm is what makes R_cc > 0.
        for (std::size_t r = 0; r < n; ++r) q(r, c) = v[r] / norm;
    }
    return q;
}

}  // namespace qdleak
