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

#include "qdleak/model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qdleak/errors.hpp"
#include "qdleak/linalg.hpp"

namespace qdleak {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr double kLinkTolerance = 1e-10;
constexpr double kNormDrift = 1e-9;
constexpr std::size_t kMaxTotalQubits = 14;

ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &frame) { return frame * u * frame.adjoint(); }

ComplexMatrix layer_frame(Basis b, int qubits) {
    const ComplexMatrix single = basis_change(b);
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int i = 0; i < qubits; ++i) out = kron(out, single);
    return out;
}

// Environment/apparatus ready state: the first pointer state of the basis.
std::vector<complex> ready_state(Basis b) { return b == Basis::computational ? kets::zero() : kets::plus(); }

std::vector<complex> prepared_state(Basis b, int bit) {
    if (b == Basis::computational) return bit == 0 ? kets::zero() : kets::one();
    return bit == 0 ? kets::plus() : kets::minus();
}

struct LayerUnitary {
    ComplexMatrix full;
    std::vector<ComplexMatrix> factors;
};

LayerUnitary identity_layer(int qubits, bool with_factors) {
    if (with_factors) return {ComplexMatrix(0, 0), std::vector(static_cast<std::size_t>(qubits), ComplexMatrix::identity(2))};
    return {ComplexMatrix::identity(std::size_t{1} << qubits), {}};
}

LayerUnitary noisy_haar_layer(const ScenarioSpec &spec, Rng &rng) {
    const ComplexMatrix frame = basis_change(spec.basis);
    const double eps = spec.epsilon;
    if (spec.haar_style == HaarLayerStyle::layer_wide) {
        const std::size_t d = spec.layer_dimension();
        const ComplexMatrix v = haar_unitary(d, rng);
        const ComplexMatrix mixed = complex(eps) * ComplexMatrix::identity(d) + complex(1.0 - eps) * v;
        return {conjugate(orthonormalize_qr(mixed), layer_frame(spec.basis, spec.qubits_per_layer)), {}};
    }
    LayerUnitary out;
    for (int e = 0; e < spec.qubits_per_layer; ++e) {
        const ComplexMatrix v = haar_unitary(2, rng);
        const ComplexMatrix mixed = complex(eps) * ComplexMatrix::identity(2) + complex(1.0 - eps) * v;
        out.factors.push_back(conjugate(orthonormalize_qr(mixed), frame));
    }
    return out;
}

void require(bool ok, const std::string &what) {
    if (!ok) throw ArgumentError("scenario: " + what);
}

void check_link(const InteractionLink &link) {
    const auto &[p0, p1] = link.projectors;
    const std::size_t d = p0.rows();
    if ((p0 + p1).max_abs_diff(ComplexMatrix::identity(d)) > kLinkTolerance ||
        (p0 * p0).max_abs_diff(p0) > kLinkTolerance || (p0 * p1).frobenius_norm() > kLinkTolerance * d) {
        throw NumericalContractError("interaction link projectors are not complementary");
    }
    auto unitary = [](const ComplexMatrix &u, const std::vector<ComplexMatrix> &factors) {
        if (factors.empty()) return u.is_unitary(kLinkTolerance);
        for (const auto &f : factors) {
            if (!f.is_unitary(kLinkTolerance)) return false;
        }
        return true;
    };
    if (!unitary(link.u0, link.u0_factors) || !unitary(link.u1, link.u1_factors)) {
        throw NumericalContractError("interaction link conditional unitary is not unitary");
    }
}

void apply_branch_unitary(StateVector &psi, const InteractionLink &link, const ComplexMatrix &full,
                          const std::vector<ComplexMatrix> &factors) {
    if (factors.empty()) {
        apply_operator(psi, full, link.target);
        return;
    }
    for (std::size_t e = 0; e < factors.size(); ++e) {
        if (factors[e].max_abs_diff(ComplexMatrix::identity(2)) == 0.0) continue;
        const std::size_t qubit[] = {link.target[e]};
        apply_operator(psi, factors[e], qubit);
    }
}

void check_norm(const StateVector &psi, const char *where) {
    if (std::abs(psi.norm() - 1.0) > kNormDrift) {
        throw NumericalContractError(std::string("state norm drifted after ") + where);
    }
}

// A->E_1 link only, as used by the decoherence factor.
InteractionLink first_link(const ScenarioSpec &spec) {
    Rng rng(spec.seed);
    ScenarioSpec one_layer = spec;
    one_layer.n_layers = 1;
    one_layer.eve_layer.reset();
    return build_interaction_chain(one_layer, rng).front();
}

// Pointer-basis coefficients c_i = <i_B|psi_prep> of the prepared system state.
std::vector<complex> pointer_coefficients(const ScenarioSpec &spec) {
    const auto psi = prepared_state(spec.preparation_basis(), spec.key_bit);
    return basis_change(spec.basis).adjoint() * std::span<const complex>(psi);
}

int included_subsystems(const ScenarioSpec &spec, const DecoherenceFactorParams &params, int available) {
    if (spec.is_sifted()) {
        throw ContractError(
            "decoherence factor is defined for rejected rounds (preparation basis != measurement basis)");
    }
    const double f = params.intercepted_fraction;
    if (!(f >= 0.0 && f < 1.0)) {
        throw ArgumentError("intercepted fraction must lie in [0, 1)");
    }
    const int m = params.subsystem_count.value_or(available);
    if (m < 1 || m > available) {
        throw ArgumentError("subsystem count must lie in [1, " + std::to_string(available) + "]");
    }
    const int included = static_cast<int>(std::floor((1.0 - f) * m));
    if (included < 1) {
        throw ArgumentError("(1 - f) * M rounds down to zero subsystems");
    }
    return included;
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::computational ? "computational" : "hadamard"; }
std::string_view to_string(InteractionMode m) { return m == InteractionMode::analytic ? "analytic" : "haar"; }
std::string_view to_string(HaarLayerStyle s) { return s == HaarLayerStyle::per_qubit ? "per-qubit" : "layer-wide"; }
std::string_view to_string(HaarBranchZero b) { return b == HaarBranchZero::identity ? "identity" : "haar"; }

std::vector<std::size_t> ScenarioSpec::layer_subsystems(int layer) const {
    if (layer < 1 || layer > n_layers) {
        throw ArgumentError("layer index " + std::to_string(layer) + " outside [1, " + std::to_string(n_layers) +
                            "]");
    }
    std::vector<std::size_t> out;
    const std::size_t first = 2 + static_cast<std::size_t>((layer - 1) * qubits_per_layer);
    for (int e = 0; e < qubits_per_layer; ++e) out.push_back(first + static_cast<std::size_t>(e));
    return out;
}

void ScenarioSpec::validate() const {
    require(key_bit == 0 || key_bit == 1, "key bit must be 0 or 1");
    require(n_layers >= 1 && n_layers <= 8, "n_layers must lie in [1, 8]");
    require(qubits_per_layer >= 1 && qubits_per_layer <= 8, "qubits_per_layer must lie in [1, 8]");
    require(total_qubits() <= kMaxTotalQubits,
            "2 + n_layers * qubits_per_layer must not exceed " + std::to_string(kMaxTotalQubits));
    require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must lie in [0, 1]");
    require(std::isfinite(alpha) && std::isfinite(premeasurement_alpha), "rotation angles must be finite");
    require(mode != InteractionMode::analytic || qubits_per_layer == 1,
            "analytic mode requires single-qubit layers");
    const int eve = eavesdropper_layer();
    require(eve >= 1 && eve <= n_layers, "eavesdropper layer outside [1, n_layers]");
}

InteractionCoefficients interaction_coefficients(double epsilon, double alpha) {
    return {epsilon + (1.0 - epsilon) * std::sin(alpha), (1.0 - epsilon) * std::cos(alpha)};
}

ComplexMatrix cx(double alpha) {
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    return {{s, c}, {c, -s}};
}

ComplexMatrix cz(double alpha) {
    const ComplexMatrix h = gates::hadamard();
    return h * cx(alpha) * h;
}

ComplexMatrix noisy_cx(double epsilon, double alpha) {
    return complex(epsilon) * ComplexMatrix::identity(2) + complex(1.0 - epsilon) * cx(alpha);
}

ComplexMatrix q_prime(double epsilon, double alpha) {
    const auto [p, q] = interaction_coefficients(epsilon, alpha);
    const double n = std::hypot(p, q);
    if (n < kDegenerateNorm) {
        throw DegeneracyError("q_prime: p = q = 0, the noisy CNOT has no orthonormal factor");
    }
    return {{p / n, -q / n}, {q / n, p / n}};
}

ComplexMatrix basis_change(Basis b) {
    return b == Basis::computational ? ComplexMatrix::identity(2) : gates::hadamard();
}

ProjectorPair basis_projectors(Basis b) {
    const ComplexMatrix frame = basis_change(b);
    return {ComplexMatrix::outer(frame.column(0)), ComplexMatrix::outer(frame.column(1))};
}

ComplexMatrix build_premeasurement(Basis basis, double alpha) {
    const auto [p0, p1] = basis_projectors(basis);
    const ComplexMatrix flip = basis == Basis::computational ? cx(alpha) : cz(alpha);
    return kron(p0, ComplexMatrix::identity(2)) + kron(p1, flip);
}

StateVector build_initial_state(const ScenarioSpec &spec) {
    spec.validate();
    std::vector<std::vector<complex>> factors;
    factors.push_back(prepared_state(spec.preparation_basis(), spec.key_bit));
    factors.push_back(ready_state(spec.basis));
    for (int l = 0; l < spec.n_layers; ++l) {
        for (int e = 0; e < spec.qubits_per_layer; ++e) factors.push_back(ready_state(spec.basis));
    }
    return StateVector::product(factors);
}

ComplexMatrix InteractionLink::unitary(int branch) const {
    const auto &factors = branch == 0 ? u0_factors : u1_factors;
    if (factors.empty()) return branch == 0 ? u0 : u1;
    return kron_all(factors);
}

ComplexMatrix InteractionLink::full_operator() const {
    return kron(projectors.p0, unitary(0)) + kron(projectors.p1, unitary(1));
}

std::vector<InteractionLink> build_interaction_chain(const ScenarioSpec &spec, Rng &rng) {
    spec.validate();
    const int ne = spec.qubits_per_layer;
    const bool product = spec.mode == InteractionMode::analytic || spec.haar_style == HaarLayerStyle::per_qubit;
    const ComplexMatrix frame = basis_change(spec.basis);

    std::vector<InteractionLink> chain;
    for (int hop = 0; hop < spec.n_layers; ++hop) {
        InteractionLink link;
        link.source = hop == 0 ? std::vector<std::size_t>{kApparatusIndex} : spec.layer_subsystems(hop);
        link.target = spec.layer_subsystems(hop + 1);

        if (hop == 0 || spec.mode == InteractionMode::analytic) {
            link.projectors = basis_projectors(spec.basis);
        } else {
            const std::size_t d = spec.layer_dimension();
            auto drawn = random_complementary_projectors(d, d / 2, rng);
            const ComplexMatrix lf = layer_frame(spec.basis, ne);
            link.projectors = {conjugate(drawn.p0, lf), conjugate(drawn.p1, lf)};
        }

        LayerUnitary u0 = identity_layer(ne, product);
        LayerUnitary u1;
        if (spec.mode == InteractionMode::analytic) {
            const ComplexMatrix q = conjugate(q_prime(spec.epsilon, spec.alpha), frame);
            u1 = {ComplexMatrix(0, 0), {q}};
        } else {
            u1 = noisy_haar_layer(spec, rng);
            if (spec.branch_zero == HaarBranchZero::haar) u0 = noisy_haar_layer(spec, rng);
        }
        link.u0 = std::move(u0.full);
        link.u0_factors = std::move(u0.factors);
        link.u1 = std::move(u1.full);
        link.u1_factors = std::move(u1.factors);
        chain.push_back(std::move(link));
    }
    return chain;
}

void apply_link(StateVector &psi, const InteractionLink &link) {
    check_link(link);
    StateVector branch0 = psi;
    apply_operator(branch0, link.projectors.p0, link.source);
    apply_branch_unitary(branch0, link, link.u0, link.u0_factors);

    apply_operator(psi, link.projectors.p1, link.source);
    apply_branch_unitary(psi, link, link.u1, link.u1_factors);

    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) psi.amplitudes[i] += branch0.amplitudes[i];
    check_norm(psi, "interaction link");
}

ExchangeOutcome run_exchange(const ScenarioSpec &spec) {
    spec.validate();
    Rng rng(spec.seed);
    return run_exchange(spec, build_interaction_chain(spec, rng));
}

ExchangeOutcome run_exchange(const ScenarioSpec &spec, const std::vector<InteractionLink> &chain) {
    spec.validate();
    if (!spec.is_sifted()) {
        throw ContractError("run_exchange models sifted rounds: preparation and measurement bases must match");
    }
    if (chain.size() != static_cast<std::size_t>(spec.n_layers)) {
        throw ArgumentError("interaction chain length does not match n_layers");
    }
    StateVector psi = build_initial_state(spec);
    const std::size_t sa[] = {kSystemIndex, kApparatusIndex};
    apply_operator(psi, build_premeasurement(spec.basis, spec.premeasurement_alpha), sa);
    check_norm(psi, "premeasurement");
    for (const auto &link : chain) apply_link(psi, link);

    const std::size_t apparatus[] = {kApparatusIndex};
    const int eve = spec.eavesdropper_layer();
    DensityMatrix rho_a = reduced_density(psi, apparatus);
    DensityMatrix rho_e = reduced_density(psi, spec.layer_subsystems(eve));
    return {std::move(psi), std::move(rho_a), std::move(rho_e), eve};
}

KeyPairOutcome run_key_pair(const ScenarioSpec &spec) {
    spec.validate();
    Rng rng(spec.seed);
    const auto chain = build_interaction_chain(spec, rng);
    ScenarioSpec s0 = spec;
    s0.key_bit = 0;
    ScenarioSpec s1 = spec;
    s1.key_bit = 1;
    return {run_exchange(s0, chain), run_exchange(s1, chain)};
}

DensityMatrix in_pointer_frame(const DensityMatrix &rho, Basis b) {
    if (b == Basis::computational) return rho;
    const std::size_t d = rho.dimension();
    if (!std::has_single_bit(d)) {
        throw ArgumentError("in_pointer_frame: dimension is not a power of two");
    }
    const ComplexMatrix frame = layer_frame(b, std::countr_zero(d));
    return {frame.adjoint() * rho.matrix * frame, rho.dims};
}

double decoherence_factor(const ScenarioSpec &spec, const DecoherenceFactorParams &params) {
    spec.validate();
    const InteractionLink link = first_link(spec);
    const bool product = link.has_product_factors();
    const int available = product ? spec.qubits_per_layer : 1;
    const int included = included_subsystems(spec, params, available);

    const auto c = pointer_coefficients(spec);
    const auto phi = ready_state(spec.basis);
    // Branch i of the link is selected by the i-th pointer state of A.
    const std::vector<ComplexMatrix> &f0 = product ? link.u0_factors : std::vector<ComplexMatrix>{link.u0};
    const std::vector<ComplexMatrix> &f1 = product ? link.u1_factors : std::vector<ComplexMatrix>{link.u1};

    // A layer-wide unitary makes the whole layer one subsystem in |phi>^{(x) N_E}.
    std::vector<complex> env = phi;
    if (!product) {
        for (int q = 1; q < spec.qubits_per_layer; ++q) env = kron(std::span<const complex>(env), phi);
    }

    double overlap = 1.0;
    for (int k = 0; k < included; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        // gamma_01 = Tr(U_0 rho U_1^dagger) = <phi| U_1^dagger U_0 |phi>.
        const auto a = f0[idx] * std::span<const complex>(env);
        const auto b = f1[idx] * std::span<const complex>(env);
        complex gamma = 0;
        for (std::size_t r = 0; r < a.size(); ++r) gamma += std::conj(b[r]) * a[r];
        overlap *= std::abs(gamma);
    }
    // Sum over i != j of |sigma_ij|: both off-diagonal entries of a qubit.
    const double coherence = 2.0 * std::abs(c[0] * std::conj(c[1]));
    return coherence * overlap;
}

double decoherence_factor_density(const ScenarioSpec &spec, const DecoherenceFactorParams &params) {
    spec.validate();
    const InteractionLink link = first_link(spec);
    const bool product = link.has_product_factors();
    const int available = product ? spec.qubits_per_layer : 1;
    const int included = included_subsystems(spec, params, available);
    const int env_qubits = product ? included : spec.qubits_per_layer;

    // Apparatus carries the system's pointer-basis coherence; the included
    // environment qubits start in the ready state.
    const auto c = pointer_coefficients(spec);
    const auto apparatus = basis_change(spec.basis) * std::span<const complex>(c);
    std::vector<std::vector<complex>> factors{apparatus};
    for (int e = 0; e < env_qubits; ++e) factors.push_back(ready_state(spec.basis));
    StateVector psi = StateVector::product(factors);

    InteractionLink restricted = link;
    restricted.target.clear();
    for (int e = 0; e < env_qubits; ++e) restricted.target.push_back(1 + static_cast<std::size_t>(e));
    restricted.source = {0};
    if (product) {
        restricted.u0_factors.resize(static_cast<std::size_t>(included));
        restricted.u1_factors.resize(static_cast<std::size_t>(included));
    }
    apply_link(psi, restricted);

    const std::size_t keep[] = {0};
    const DensityMatrix rho = in_pointer_frame(reduced_density(psi, keep), spec.basis);
    return std::abs(rho.matrix(0, 1)) + std::abs(rho.matrix(1, 0));
}

}  // namespace qdleak
