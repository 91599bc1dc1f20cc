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

#ifndef QDLEAK_LINALG_HPP
#define QDLEAK_LINALG_HPP

#include <vector>

#include "qdleak/tensor.hpp"

namespace qdleak {

/// Tolerance used to accept a matrix as Hermitian on entry to the spectral
/// routines. Inputs built from density matrices carry rounding well below it.
inline constexpr double kHermitianTolerance = 1e-10;

struct HermEig {
    /// Descending.
    std::vector<double> values;
    /// Column i is the eigenvector of values[i].
    ComplexMatrix vectors;
};

/// Eigendecomposition of a Hermitian matrix. Throws ArgumentError if `h` is
/// not Hermitian within kHermitianTolerance.
HermEig herm_eig(const ComplexMatrix &h);

/// Eigenvalues only (descending); same preconditions as herm_eig.
std::vector<double> herm_eigenvalues(const ComplexMatrix &h);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix &h);

/// Q factor of the Gram-Schmidt QR decomposition of a square matrix, with R's
/// diagonal real and positive. Throws DegeneracyError when a column is
/// (numerically) in the span of the preceding ones.
ComplexMatrix orthonormalize_qr(const ComplexMatrix &m);

}  // namespace qdleak

#endif  // QDLEAK_LINALG_HPP
