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

#include "qdleak/eavesdropper.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qdleak/errors.hpp"
#include "qdleak/linalg.hpp"
#include "qdleak/model.hpp"
#include "qdleak/random.hpp"

using namespace qdleak;

namespace {

DensityMatrix pure(const std::vector<complex> &ket) { return DensityMatrix(ComplexMatrix::outer(ket)); }

DensityMatrix random_mixed(std::size_t dim, std::size_t rank, Rng &rng) {
    ComplexMatrix g(dim, rank);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < rank; ++c) g(r, c) = rng.complex_normal();
    }
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix(rho);
}

// Random two-outcome POVM element: 0 <= E0 <= 1.
ComplexMatrix random_effect(std::size_t dim, Rng &rng) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    std::vector<double> w(dim);
    for (auto &x : w) x = std::clamp(0.5 + 0.5 * rng.normal(), 0.0, 1.0);
    return u * ComplexMatrix::diagonal(w) * u.adjoint();
}

EavesdropQuery query(const DensityMatrix &a, const DensityMatrix &b, ControlMode mode, int k) {
    EavesdropQuery q{a, b, 0.5, {}};
    q.control.mode = mode;
    q.control.controlled_qubits = k;
    return q;
}

}  // namespace

TEST(Helstrom, Examples) {
    EXPECT_NEAR(helstrom_pguess(pure(kets::zero()), pure(kets::zero())), 0.5, 1e-15);
    EXPECT_NEAR(helstrom_pguess(pure(kets::zero()), pure(kets::one())), 1.0, 1e-15);
    EXPECT_NEAR(helstrom_pguess(pure(kets::zero()), pure(kets::plus())), 0.5 + std::sqrt(2.0) / 4, 1e-12);
    EXPECT_NEAR(helstrom_pguess(pure(kets::zero()), pure(kets::one()), 0.8), 1.0, 1e-15);
    EXPECT_NEAR(helstrom_pguess(pure(kets::zero()), pure(kets::zero()), 0.8), 0.8, 1e-15);
}

TEST(Helstrom, Errors) {
    const DensityMatrix two = pure(kets::zero());
    const DensityMatrix four(0.25 * ComplexMatrix::identity(4));
    EXPECT_THROW(helstrom_pguess(two, four), ArgumentError);
    EXPECT_THROW(helstrom_pguess(two, two, 1.5), ArgumentError);
}

TEST(Helstrom, UnitarilyInvariant) {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const DensityMatrix a = random_mixed(8, 3, rng), b = random_mixed(8, 2, rng);
        const ComplexMatrix u = haar_unitary(8, rng);
        const DensityMatrix ua(u * a.matrix * u.adjoint()), ub(u * b.matrix * u.adjoint());
        EXPECT_NEAR(helstrom_pguess(ua, ub), helstrom_pguess(a, b), 1e-10);
    }
}

TEST(Helstrom, BoundsEveryMeasurementAndIsAchieved) {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix a = random_mixed(4, 1 + trial % 4, rng), b = random_mixed(4, 2, rng);
        const double best = helstrom_pguess(a, b);
        EXPECT_GE(best, 0.5);
        EXPECT_LE(best, 1.0 + 1e-12);
        for (int m = 0; m < 200; ++m) EXPECT_LE(measurement_success(a, b, 0.5, random_effect(4, rng)), best + 1e-12);
        const ProjectorPair opt = helstrom_measurement(a, b);
        EXPECT_NEAR(measurement_success(a, b, 0.5, opt.p0), best, 1e-9);
        EXPECT_LE((opt.p0 + opt.p1).max_abs_diff(ComplexMatrix::identity(4)), 1e-10);
    }
}

TEST(RestrictedControl, FullControlLimits) {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix a = random_mixed(8, 2, rng), b = random_mixed(8, 2, rng);
        const double full = helstrom_pguess(a, b);
        EXPECT_NEAR(restricted_pguess(query(a, b, ControlMode::rank_limited, 3)), full, 1e-10);
        EXPECT_NEAR(restricted_pguess(query(a, b, ControlMode::spectral, 3)), full, 1e-10);
        EavesdropQuery framed = query(a, b, ControlMode::rank_limited, 3);
        framed.control.frame = random_control_frame(8, static_cast<std::uint64_t>(trial));
        EXPECT_NEAR(restricted_pguess(framed), full, 1e-10);
        EavesdropQuery subset = query(a, b, ControlMode::qubit_subset, 3);
        subset.control.subset = {0, 1, 2};
        EXPECT_NEAR(restricted_pguess(subset), full, 1e-10);
        for (auto mode : {ControlMode::rank_limited, ControlMode::spectral, ControlMode::qubit_subset}) {
            EXPECT_NEAR(restricted_pguess(query(a, b, mode, 0)), 0.5, 1e-15);
        }
    }
}

TEST(RestrictedControl, MonotoneInControlledQubits) {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix a = random_mixed(16, 2, rng), b = random_mixed(16, 3, rng);
        const ComplexMatrix frame = random_control_frame(16, static_cast<std::uint64_t>(trial));
        double prev_rank = 0.5, prev_spec = 0.5, prev_subset = 0.5;
        for (int k = 0; k <= 4; ++k) {
            EavesdropQuery r = query(a, b, ControlMode::rank_limited, k);
            r.control.frame = frame;
            const double pr = restricted_pguess(r);
            const double ps = restricted_pguess(query(a, b, ControlMode::spectral, k));
            EavesdropQuery s = query(a, b, ControlMode::qubit_subset, k);
            for (int i = 0; i < k; ++i) s.control.subset.push_back(static_cast<std::size_t>(i));
            const double pq = restricted_pguess(s);
            EXPECT_GE(pr, prev_rank - 1e-12);
            EXPECT_GE(ps, prev_spec - 1e-12);
            EXPECT_GE(pq, prev_subset - 1e-12);
            // The spectral choice is the best 2^k-dimensional subspace.
            EXPECT_GE(ps, pr - 1e-12);
            prev_rank = pr;
            prev_spec = ps;
            prev_subset = pq;
        }
    }
}

TEST(RestrictedControl, Errors) {
    const DensityMatrix a = pure(kets::zero()), b = pure(kets::one());
    EXPECT_THROW(restricted_pguess(query(a, b, ControlMode::rank_limited, 2)), ArgumentError);
    EXPECT_THROW(restricted_pguess(query(a, b, ControlMode::spectral, -1)), ArgumentError);
    EavesdropQuery s = query(a, b, ControlMode::qubit_subset, 1);
    EXPECT_THROW(restricted_pguess(s), ArgumentError);
    EavesdropQuery framed = query(a, b, ControlMode::rank_limited, 1);
    framed.control.frame = ComplexMatrix::identity(4);
    EXPECT_THROW(restricted_pguess(framed), ArgumentError);
}

TEST(ControlFrame, DeterministicUnitary) {
    const ComplexMatrix f = random_control_frame(8, 5);
    EXPECT_TRUE(f.is_unitary(1e-10));
    EXPECT_EQ(f, random_control_frame(8, 5));
    EXPECT_NE(f, random_control_frame(8, 6));
}

TEST(Information, Examples) {
    EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_NEAR(key_rate(0.5), 1.0, 1e-15);
    EXPECT_NEAR(key_rate(1.0), 0.0, 1e-15);
    EXPECT_NEAR(mutual_information(1.0), 1.0, 1e-15);
    EXPECT_NEAR(mutual_information(0.5), 0.0, 1e-15);
    const double p = 0.5 + std::sqrt(2.0) / 4;
    EXPECT_NEAR(mutual_information(p), 0.39912, 5e-6);
    EXPECT_NEAR(key_rate(p), 0.60088, 5e-6);
    EXPECT_NEAR(printed_general_key_rate(p), -0.60088, 5e-6);
}

TEST(Information, RatesSumToOneAndDecrease) {
    double prev = 1.0 + 1e-15;
    for (int i = 0; i <= 1000; ++i) {
        const double p = 0.5 + 0.5 * i / 1000.0;
        EXPECT_NEAR(key_rate(p) + mutual_information(p), 1.0, 1e-12);
        EXPECT_LE(key_rate(p), prev);
        prev = key_rate(p);
    }
}

TEST(Information, RangeErrors) {
    EXPECT_THROW(key_rate(0.4), ArgumentError);
    EXPECT_THROW(mutual_information(1.1), ArgumentError);
    EXPECT_THROW(binary_entropy(-0.1), ArgumentError);
    EXPECT_THROW(key_rate(std::nan("")), ArgumentError);
}

TEST(Eavesdrop, ReportFields) {
    EavesdropQuery q = query(pure(kets::zero()), pure(kets::plus()), ControlMode::full, 0);
    const EavesdropReport r = eavesdrop(q);
    EXPECT_NEAR(r.p_guess, 0.5 + std::sqrt(2.0) / 4, 1e-12);
    EXPECT_NEAR(r.key_rate + r.mutual_information, 1.0, 1e-12);
    EXPECT_EQ(r.control.mode, ControlMode::full);
}

TEST(AnalyticPguess, Examples) {
    EXPECT_NEAR(analytic_pguess(1, 0.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(analytic_pguess(4, 1.0, 0.3), 0.5, 1e-15);
    EXPECT_NEAR(analytic_pguess(1, 0.5, 0.0), 0.5 + std::sqrt(2.0) / 4, 1e-12);
    EXPECT_NEAR(analytic_pguess(2, 0.5, 0.0), 0.67678, 5e-6);
    EXPECT_NEAR(analytic_pguess(1, 0.7, 0.0), 0.69696, 5e-6);
    EXPECT_NEAR(key_rate(analytic_pguess(1, 0.7, 0.0)), 0.8849, 1e-4);
    EXPECT_THROW(analytic_pguess(0, 0.5, 0.0), ArgumentError);
    EXPECT_THROW(analytic_pguess(1, 0.5, 3 * std::numbers::pi / 2), DegeneracyError);
}

TEST(AnalyticPguess, NonIncreasingInLayers) {
    for (double eps = 0.0; eps <= 1.0; eps += 0.05) {
        for (double a : {0.0, 0.5, 1.0}) {
            double prev = 1.0 + 1e-15;
            for (int n = 1; n <= 8; ++n) {
                const double p = analytic_pguess(n, eps, a);
                EXPECT_GE(p, 0.5);
                EXPECT_LE(p, prev);
                prev = p;
            }
        }
    }
}

TEST(AnalyticKeyRate, Forms) {
    const AnalyticKeyRate half = analytic_key_rate(1, 0.5, 0.0);
    EXPECT_NEAR(half.canonical, 0.60088, 5e-6);
    EXPECT_NEAR(half.printed_general, -half.canonical, 1e-15);
    EXPECT_TRUE(std::isfinite(half.printed_single_layer));
    EXPECT_TRUE(std::isnan(analytic_key_rate(2, 0.5, 0.0).printed_single_layer));
    EXPECT_NEAR(analytic_key_rate(3, 1.0, 0.0).canonical, 1.0, 1e-15);
}

TEST(Oracle, SimulatedLeakMatchesClosedFormInBothBases) {
    for (int n = 1; n <= 3; ++n) {
        for (double eps : {0.0, 0.25, 0.6, 0.9}) {
            for (Basis b : {Basis::computational, Basis::hadamard}) {
                ScenarioSpec s;
                s.basis = b;
                s.n_layers = n;
                s.epsilon = eps;
                s.alpha = std::numbers::pi / 4;
                const auto out = run_key_pair(s);
                EXPECT_NEAR(helstrom_pguess(out.bit0.rho_eve_layer, out.bit1.rho_eve_layer),
                            analytic_pguess(n, eps, s.alpha), 1e-9);
            }
        }
    }
}
