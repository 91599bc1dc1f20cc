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

#ifndef QDLEAK_MODEL_HPP
#define QDLEAK_MODEL_HPP

// System (S) - apparatus (A) - layered environment (E_1 .. E_{N_l}) model of a
// single BB84 round. The global state keeps one subsystem per qubit, ordered
// S, A, E_{1,1} .. E_{1,N_E}, E_{2,1} .. E_{N_l,N_E}.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qdleak/random.hpp"
#include "qdleak/tensor.hpp"

namespace qdleak {

enum class Basis { computational, hadamard };

/// analytic: single-qubit layers coupled by (1, Q'(eps, alpha)).
/// haar: random conditional unitaries and random interior projectors.
enum class InteractionMode { analytic, haar };

/// How a Haar-mode conditional unitary covers a multi-qubit layer.
enum class HaarLayerStyle { per_qubit, layer_wide };

/// What the branch-0 conditional unitary of a Haar link is.
enum class HaarBranchZero { identity, haar };

std::string_view to_string(Basis b);
std::string_view to_string(InteractionMode m);
std::string_view to_string(HaarLayerStyle s);
std::string_view to_string(HaarBranchZero b);

struct ScenarioSpec {
    /// Bob's measurement basis.
    Basis basis = Basis::computational;
    /// Alice's preparation basis; unset means equal to `basis` (a sifted round).
    std::optional<Basis> preparation;
    int key_bit = 0;
    int n_layers = 1;
    int qubits_per_layer = 1;
    double epsilon = 0.0;
    /// Rotation of the imperfect CNOT inside the environment couplings.
    double alpha = 0.0;
    /// Rotation used by the S-A premeasurement; 0 is the ideal CNOT.
    double premeasurement_alpha = 0.0;
    InteractionMode mode = InteractionMode::analytic;
    std::uint64_t seed = 0;
    /// 1-based layer the eavesdropper reads; unset means the last layer.
    std::optional<int> eve_layer;
    HaarLayerStyle haar_style = HaarLayerStyle::per_qubit;
    HaarBranchZero branch_zero = HaarBranchZero::identity;

    Basis preparation_basis() const { return preparation.value_or(basis); }
    bool is_sifted() const { return preparation_basis() == basis; }
    int eavesdropper_layer() const { return eve_layer.value_or(n_layers); }
    std::size_t layer_dimension() const { return std::size_t{1} << qubits_per_layer; }
    std::size_t total_qubits() const { return 2 + static_cast<std::size_t>(n_layers * qubits_per_layer); }

    /// Subsystem indices of layer `layer` (1-based) in the global state.
    std::vector<std::size_t> layer_subsystems(int layer) const;

    /// Throws ArgumentError on any violated invariant.
    void validate() const;
};

inline constexpr std::size_t kSystemIndex = 0;
inline constexpr std::size_t kApparatusIndex = 1;

/// Interaction strength coefficients p = eps + (1-eps) sin(alpha) and
/// q = (1-eps) cos(alpha).
struct InteractionCoefficients {
    double p;
    double q;
};
InteractionCoefficients interaction_coefficients(double epsilon, double alpha);

ComplexMatrix cx(double alpha);
ComplexMatrix cz(double alpha);

/// eps * 1 + (1 - eps) * cx(alpha); not unitary in general.
ComplexMatrix noisy_cx(double epsilon, double alpha);

/// Closed-form orthonormal factor [[p, -q], [q, p]] / sqrt(p^2 + q^2).
/// Throws DegeneracyError when p = q = 0.
ComplexMatrix q_prime(double epsilon, double alpha);

/// Unitary taking computational basis vectors to the pointer states of `b`.
ComplexMatrix basis_change(Basis b);

/// Rank-1 pointer-state projectors {P_0, P_1} or {P_+, P_-}.
ProjectorPair basis_projectors(Basis b);

/// Premeasurement unitary on S (x) A.
ComplexMatrix build_premeasurement(Basis basis, double alpha);

StateVector build_initial_state(const ScenarioSpec &spec);

/// One hop of the environment chain: P0 (x) U0 + P1 (x) U1 with the
/// projectors on the source register and the unitaries on the target layer.
struct InteractionLink {
    std::vector<std::size_t> source;
    std::vector<std::size_t> target;
    ProjectorPair projectors;
    /// Branch unitaries on the whole target layer; left empty (0x0) when the
    /// per-qubit factors below are set.
    ComplexMatrix u0;
    ComplexMatrix u1;
    /// Per-qubit tensor factors of the branch unitaries; empty when the layer
    /// unitary is not a product.
    std::vector<ComplexMatrix> u0_factors;
    std::vector<ComplexMatrix> u1_factors;

    /// Branch unitary on the target layer, assembled from factors if needed.
    ComplexMatrix unitary(int branch) const;
    /// Dense operator on source (x) target. Only sensible for small registers.
    ComplexMatrix full_operator() const;
    bool has_product_factors() const { return !u1_factors.empty(); }
};

/// Links A->E_1, E_1->E_2, ..., E_{N_l-1}->E_{N_l}.
std::vector<InteractionLink> build_interaction_chain(const ScenarioSpec &spec, Rng &rng);

/// Applies one link in place. Throws NumericalContractError if the link is
/// not made of complementary projectors and unitaries, or if the norm drifts.
void apply_link(StateVector &psi, const InteractionLink &link);

struct ExchangeOutcome {
    StateVector global_state;
    DensityMatrix rho_apparatus;
    DensityMatrix rho_eve_layer;
    int eve_layer_index = 0;
};

/// Runs one sifted round: premeasurement, then the interaction chain drawn
/// from `spec.seed`.
ExchangeOutcome run_exchange(const ScenarioSpec &spec);
/// Same, with a caller-supplied chain.
ExchangeOutcome run_exchange(const ScenarioSpec &spec, const std::vector<InteractionLink> &chain);

/// Both key-bit outcomes of one device realization (shared chain).
struct KeyPairOutcome {
    ExchangeOutcome bit0;
    ExchangeOutcome bit1;
};
KeyPairOutcome run_key_pair(const ScenarioSpec &spec);

/// Re-expresses a layer density matrix in the pointer basis of `b` (the
/// layer's qubits each rotated by basis_change(b)^dagger).
DensityMatrix in_pointer_frame(const DensityMatrix &rho, Basis b);

struct DecoherenceFactorParams {
    /// Fraction f of environment subsystems left out of the product.
    double intercepted_fraction = 0.0;
    /// M; unset means every subsystem of the first layer.
    std::optional<int> subsystem_count;
};

/// Collective decoherence factor of the A->E_1 interaction for a rejected
/// round (preparation basis != measurement basis), from per-subsystem overlaps.
double decoherence_factor(const ScenarioSpec &spec, const DecoherenceFactorParams &params = {});

/// Same quantity read off the off-diagonals of the apparatus' reduced density
/// matrix after the A->E_1 interaction.
double decoherence_factor_density(const ScenarioSpec &spec, const DecoherenceFactorParams &params = {});

}  // namespace qdleak

#endif  // QDLEAK_MODEL_HPP
