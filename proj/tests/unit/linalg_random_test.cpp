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

#include <gtest/gtest.h>

#include <cmath>

#include "qdleak/errors.hpp"
#include "qdleak/linalg.hpp"
#include "qdleak/random.hpp"

using namespace qdleak;

namespace {

ComplexMatrix random_hermitian(std::size_t dim, Rng &rng) {
    ComplexMatrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
    }
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

ComplexMatrix reconstruct(const HermEig &e) {
    const std::size_t n = e.values.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.values[i];
    return e.vectors * d * e.vectors.adjoint();
}

// Textbook classical Gram-Schmidt on the columns of a real 2x2 matrix.
ComplexMatrix gram_schmidt_2x2(double a, double b, double c, double d) {
    const double n1 = std::hypot(a, c);
    const double e1[] = {a / n1, c / n1};
    const double proj = e1[0] * b + e1[1] * d;
    const double u[] = {b - proj * e1[0], d - proj * e1[1]};
    const double n2 = std::hypot(u[0], u[1]);
    return {{e1[0], u[0] / n2}, {e1[1], u[1] / n2}};
}

}  // namespace

TEST(HermEig, DiagonalInput) {
    const double diag[] = {3, 1};
    const HermEig e = herm_eig(ComplexMatrix::diagonal(diag));
    EXPECT_EQ(e.values, (std::vector<double>{3, 1}));
    EXPECT_NEAR(std::abs(e.vectors(0, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(e.vectors(1, 1)), 1.0, 1e-15);
}

TEST(HermEig, PauliXSpectrum) {
    const HermEig e = herm_eig(gates::pauli_x());
    EXPECT_NEAR(e.values[0], 1.0, 1e-15);
    EXPECT_NEAR(e.values[1], -1.0, 1e-15);
    // Columns are |+> and |-> up to a phase.
    const auto plus = kets::plus();
    const auto minus = kets::minus();
    EXPECT_NEAR(std::abs(std::conj(plus[0]) * e.vectors(0, 0) + std::conj(plus[1]) * e.vectors(1, 0)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(std::conj(minus[0]) * e.vectors(0, 1) + std::conj(minus[1]) * e.vectors(1, 1)), 1.0, 1e-12);
}

TEST(HermEig, ReconstructsRandom32x32) {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix h = random_hermitian(32, rng);
        const HermEig e = herm_eig(h);
        EXPECT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
        EXPECT_TRUE(e.vectors.is_unitary(1e-10));
        EXPECT_LT((reconstruct(e) - h).frobenius_norm(), 1e-9);
    }
}

TEST(HermEig, RejectsNonHermitian) {
    const ComplexMatrix m{{0, 1}, {0, 0}};
    EXPECT_THROW(herm_eig(m), ArgumentError);
    EXPECT_THROW(trace_norm(m), ArgumentError);
    EXPECT_THROW(herm_eig(ComplexMatrix(2, 3)), ArgumentError);
}

TEST(TraceNorm, KnownSpectra) {
    const double diag[] = {0.5, -0.5};
    EXPECT_NEAR(trace_norm(ComplexMatrix::diagonal(diag)), 1.0, 1e-15);
    const ComplexMatrix delta = 0.5 * ComplexMatrix::outer(kets::zero()) - 0.5 * ComplexMatrix::outer(kets::plus());
    EXPECT_NEAR(trace_norm(delta), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(TraceNorm, DensityMatricesHaveUnitNorm) {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix g = random_hermitian(6, rng);
        ComplexMatrix rho = g * g;
        rho *= 1.0 / rho.trace().real();
        EXPECT_NEAR(trace_norm(rho), 1.0, 1e-12);
    }
}

TEST(TraceNorm, UnitarilyInvariant) {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix h = random_hermitian(8, rng);
        const ComplexMatrix u = haar_unitary(8, rng);
        EXPECT_NEAR(trace_norm(u * h * u.adjoint()), trace_norm(h), 1e-9);
    }
}

TEST(OrthonormalizeQr, UnitaryFixedPoint) {
    EXPECT_LE(orthonormalize_qr(ComplexMatrix::identity(2)).max_abs_diff(ComplexMatrix::identity(2)), 1e-15);
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix u = haar_unitary(5, rng);
        EXPECT_LE(orthonormalize_qr(u).max_abs_diff(u), 1e-10);
    }
}

TEST(OrthonormalizeQr, MatchesGramSchmidtOnRandomReal2x2) {
    Rng rng(50);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
        const ComplexMatrix m{{a, b}, {c, d}};
        EXPECT_LE(orthonormalize_qr(m).max_abs_diff(gram_schmidt_2x2(a, b, c, d)), 1e-10);
    }
}

TEST(OrthonormalizeQr, IdempotentAndUnitary) {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix m(4, 4);
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = rng.complex_normal();
        }
        const ComplexMatrix q = orthonormalize_qr(m);
        EXPECT_TRUE(q.is_unitary(1e-10));
        EXPECT_LE(orthonormalize_qr(q).max_abs_diff(q), 1e-10);
        // R = Q^dagger M is upper triangular with a positive real diagonal.
        const ComplexMatrix r = q.adjoint() * m;
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_GT(r(i, i).real(), 0.0);
            EXPECT_NEAR(r(i, i).imag(), 0.0, 1e-10);
            for (std::size_t j = 0; j < i; ++j) EXPECT_NEAR(std::abs(r(i, j)), 0.0, 1e-10);
        }
    }
}

TEST(OrthonormalizeQr, RankDeficientRaises) {
    const ComplexMatrix half{{0.5, 0.5}, {0.5, 0.5}};
    EXPECT_THROW(orthonormalize_qr(half), DegeneracyError);
    EXPECT_THROW(orthonormalize_qr(ComplexMatrix(2, 2)), DegeneracyError);
    EXPECT_THROW(orthonormalize_qr(ComplexMatrix(2, 3)), ArgumentError);
}

TEST(HaarUnitary, UnitaryAndDeterministic) {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) EXPECT_TRUE(haar_unitary(8, rng).is_unitary(1e-10));

    Rng a(77), b(77), c(78);
    const ComplexMatrix ua = haar_unitary(4, a);
    EXPECT_EQ(ua, haar_unitary(4, b));
    EXPECT_GT((ua - haar_unitary(4, c)).frobenius_norm(), 0.1);
}

TEST(HaarUnitary, SecondMomentIsOneOverDim) {
    Rng rng(31337);
    double sum = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) sum += std::norm(haar_unitary(4, rng)(0, 0));
    EXPECT_NEAR(sum / draws, 0.25, 0.01);
}

TEST(HaarUnitary, DimensionLimit) {
    Rng rng(1);
    EXPECT_THROW(haar_unitary(64, rng, 32), DimensionLimitError);
    EXPECT_THROW(haar_unitary(0, rng), ArgumentError);
}

TEST(RandomProjectors, QubitCase) {
    Rng rng(6);
    const ProjectorPair p = random_complementary_projectors(2, 1, rng);
    EXPECT_LE((p.p0 + p.p1).max_abs_diff(ComplexMatrix::identity(2)), 1e-10);
    EXPECT_LE((p.p0 * p.p1).frobenius_norm(), 1e-10);
    EXPECT_NEAR(p.p0.trace().real(), 1.0, 1e-10);
}

TEST(RandomProjectors, IdempotentWithBinarySpectrum) {
    Rng rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rank = 1 + static_cast<std::size_t>(trial % 7);
        const ProjectorPair p = random_complementary_projectors(8, rank, rng);
        EXPECT_NEAR(p.p0.trace().real(), static_cast<double>(rank), 1e-10);
        EXPECT_LE((p.p0 * p.p0).max_abs_diff(p.p0), 1e-10);
        EXPECT_LE((p.p1 * p.p1).max_abs_diff(p.p1), 1e-10);
        EXPECT_LE((p.p0 + p.p1).max_abs_diff(ComplexMatrix::identity(8)), 1e-10);
        for (double v : herm_eigenvalues(p.p0)) EXPECT_LE(std::min(std::abs(v), std::abs(v - 1.0)), 1e-10);
    }
}

TEST(RandomProjectors, RankOutOfRange) {
    Rng rng(1);
    EXPECT_THROW(random_complementary_projectors(4, 0, rng), ArgumentError);
    EXPECT_THROW(random_complementary_projectors(4, 4, rng), ArgumentError);
}

TEST(DeriveSeed, PureAndCoordinateSensitive) {
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(2, {2, 3}));
}
