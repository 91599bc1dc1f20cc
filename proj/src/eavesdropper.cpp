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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "qdleak/errors.hpp"
#include "qdleak/linalg.hpp"
#include "qdleak/model.hpp"

namespace qdleak {

namespace {

constexpr double kProbabilitySlack = 1e-9;
constexpr std::uint64_t kControlFrameStream = 0xc0f7;

void check_pair(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda) {
    if (rho0.dimension() != rho1.dimension()) {
        throw ArgumentError("eavesdropper: states have different dimensions (" + std::to_string(rho0.dimension()) +
                            " vs " + std::to_string(rho1.dimension()) + ")");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ArgumentError("eavesdropper: prior lambda must lie in [0, 1]");
    }
}

ComplexMatrix weighted_difference(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda) {
    return complex(lambda) * rho0.matrix - complex(1.0 - lambda) * rho1.matrix;
}

std::size_t controlled_dimension(const EavesdropQuery &query) {
    const int k = query.control.controlled_qubits;
    const std::size_t d = query.rho0.dimension();
    if (k < 0 || k >= std::numeric_limits<std::size_t>::digits || (std::size_t{1} << k) > d) {
        throw ArgumentError("eavesdropper: 2^" + std::to_string(k) + " exceeds the layer dimension " +
                            std::to_string(d));
    }
    return std::size_t{1} << k;
}

// Views a layer state as a register of qubits.
DensityMatrix as_qubits(const DensityMatrix &rho) {
    if (std::ranges::all_of(rho.dims, [](std::size_t d) { return d == 2; })) return rho;
    const std::size_t d = rho.dimension();
    if (!std::has_single_bit(d)) {
        throw ArgumentError("eavesdropper: qubit-subset control needs a power-of-two layer dimension");
    }
    return {rho.matrix, std::vector<std::size_t>(static_cast<std::size_t>(std::countr_zero(d)), 2)};
}

// W_m^dagger delta W_m for the first m columns W_m of `frame`.
ComplexMatrix compress(const ComplexMatrix &delta, const ComplexMatrix &frame, std::size_t m) {
    const std::size_t d = delta.rows();
    if (frame.rows() != d || frame.cols() != d) {
        throw ArgumentError("eavesdropper: control frame must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    ComplexMatrix w(d, m);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < m; ++c) w(r, c) = frame(r, c);
    }
    return w.adjoint() * (delta * w);
}

double clamp_guess(double p) {
    if (!(p >= 0.5 - kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
        throw ArgumentError("guessing probability " + std::to_string(p) + " outside [0.5, 1]");
    }
    return std::clamp(p, 0.5, 1.0);
}

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

}  // namespace

std::string_view to_string(ControlMode m) {
    switch (m) {
        case ControlMode::full:
            return "full";
        case ControlMode::rank_limited:
            return "rank";
        case ControlMode::spectral:
            return "spectral";
        case ControlMode::qubit_subset:
            return "subset";
    }
    return "?";
}

ComplexMatrix random_control_frame(std::size_t dim, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {kControlFrameStream}));
    return haar_unitary(dim, rng);
}

double helstrom_pguess(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda) {
    check_pair(rho0, rho1, lambda);
    return 0.5 + 0.5 * trace_norm(weighted_difference(rho0, rho1, lambda));
}

double restricted_pguess(const EavesdropQuery &query) {
    check_pair(query.rho0, query.rho1, query.lambda);
    const ControlSpec &control = query.control;
    if (control.mode == ControlMode::full) {
        return helstrom_pguess(query.rho0, query.rho1, query.lambda);
    }
    const std::size_t dim = controlled_dimension(query);
    if (control.controlled_qubits == 0) return 0.5;

    switch (control.mode) {
        case ControlMode::rank_limited: {
            // Compression of the difference onto Eve's subspace; the coin flip
            // outside it contributes exactly 1/2 of the missing weight.
            const ComplexMatrix delta = weighted_difference(query.rho0, query.rho1, query.lambda);
            if (!control.frame) return 0.5 + 0.5 * trace_norm(delta.leading_block(dim));
            return 0.5 + 0.5 * trace_norm(compress(delta, *control.frame, dim));
        }
        case ControlMode::spectral: {
            auto mu = herm_eigenvalues(weighted_difference(query.rho0, query.rho1, query.lambda));
            std::ranges::sort(mu, [](double a, double b) { return std::abs(a) > std::abs(b); });
            double kept = 0;
            for (std::size_t i = 0; i < dim; ++i) kept += std::abs(mu[i]);
            return 0.5 + 0.5 * kept;
        }
        case ControlMode::qubit_subset: {
            if (control.subset.size() != static_cast<std::size_t>(control.controlled_qubits)) {
                throw ArgumentError("eavesdropper: qubit subset length must equal controlled_qubits");
            }
            const DensityMatrix r0 = partial_trace(as_qubits(query.rho0), control.subset);
            const DensityMatrix r1 = partial_trace(as_qubits(query.rho1), control.subset);
            return helstrom_pguess(r0, r1, query.lambda);
        }
        case ControlMode::full:
            break;
    }
    return helstrom_pguess(query.rho0, query.rho1, query.lambda);
}

double guessing_probability(const EavesdropQuery &query) {
    if (query.control.mode == ControlMode::full) {
        return helstrom_pguess(query.rho0, query.rho1, query.lambda);
    }
    return restricted_pguess(query);
}

EavesdropReport eavesdrop(const EavesdropQuery &query) {
    const double p = clamp_guess(guessing_probability(query));
    return {p, mutual_information(p), key_rate(p), query.control};
}

ProjectorPair helstrom_measurement(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda) {
    check_pair(rho0, rho1, lambda);
    const HermEig eig = herm_eig(weighted_difference(rho0, rho1, lambda));
    const std::size_t d = rho0.dimension();
    ProjectorPair out{ComplexMatrix(d, d), ComplexMatrix(d, d)};
    for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix &target = eig.values[k] >= 0.0 ? out.p0 : out.p1;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) target(r, c) += eig.vectors(r, k) * std::conj(eig.vectors(c, k));
        }
    }
    return out;
}

double measurement_success(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda,
                           const ComplexMatrix &e0) {
    check_pair(rho0, rho1, lambda);
    const ComplexMatrix e1 = ComplexMatrix::identity(e0.rows()) - e0;
    return lambda * (e0 * rho0.matrix).trace().real() + (1.0 - lambda) * (e1 * rho1.matrix).trace().real();
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError("binary_entropy: probability outside [0, 1]");
    }
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double mutual_information(double p_guess) {
    const double p = clamp_guess(p_guess);
    return 1.0 + xlog2x(1.0 - p) + xlog2x(p);
}

double key_rate(double p_guess) {
    const double p = clamp_guess(p_guess);
    return -xlog2x(1.0 - p) - xlog2x(p);
}

double printed_general_key_rate(double p_guess) {
    const double p = clamp_guess(p_guess);
    return xlog2x(1.0 - p) + xlog2x(p);
}

double analytic_pguess(int n_layers, double epsilon, double alpha) {
    if (n_layers < 1) {
        throw ArgumentError("analytic_pguess: need at least one layer");
    }
    const auto [p, q] = interaction_coefficients(epsilon, alpha);
    const double norm = std::hypot(p, q);
    if (norm < 1e-12) {
        throw DegeneracyError("analytic_pguess: p = q = 0");
    }
    // |q| so the trace-norm bias stays non-negative for cos(alpha) < 0.
    const double power = 2.0 * n_layers - 1.0;
    return 0.5 + 0.5 * std::pow(std::abs(q) / norm, power);
}

AnalyticKeyRate analytic_key_rate(int n_layers, double epsilon, double alpha) {
    AnalyticKeyRate out{};
    out.p_guess = analytic_pguess(n_layers, epsilon, alpha);
    out.canonical = key_rate(out.p_guess);
    out.printed_general = printed_general_key_rate(out.p_guess);

    const auto [p, q] = interaction_coefficients(epsilon, alpha);
    const double n2 = p * p + q * q;
    const double n = std::sqrt(n2);
    out.printed_single_layer = std::numeric_limits<double>::quiet_NaN();
    if (n_layers == 1) {
        out.printed_single_layer = 1.0 - 0.5 * (std::log2(q * q / n2) + q / n * std::log2((n + q) / (n - q)));
    }
    const double m = 2.0 * n_layers - 1.0;
    const double big = std::pow(n2, m);
    const double half = std::pow(n2, m / 2.0);
    const double qm = std::pow(q, m);
    out.printed_n_layer = 1.0 - 0.5 * std::log2((big - std::pow(q, 2.0 * m)) / big) +
                          0.5 * qm / half * std::log2((half + qm) / (half - qm));
    return out;
}

}  // namespace qdleak
