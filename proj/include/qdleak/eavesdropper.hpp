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

#ifndef QDLEAK_EAVESDROPPER_HPP
#define QDLEAK_EAVESDROPPER_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qdleak/random.hpp"
#include "qdleak/tensor.hpp"

namespace qdleak {

/// How much of the leaked layer the eavesdropper can measure.
///
///  - full: the whole layer; optimal two-outcome (Helstrom) measurement.
///  - rank_limited: a fixed 2^k-dimensional subspace chosen without looking at
///    the states, spanned by the first 2^k columns of ControlSpec::frame (by
///    default the first 2^k basis states). Eve measures optimally inside it;
///    outcomes outside it give an unbiased coin flip.
///  - spectral: like rank_limited, but the subspace is chosen after seeing
///    the states (the 2^k largest-magnitude eigenvectors of the weighted
///    difference), which is the best any rank-2^k projector can do.
///  - qubit_subset: Eve holds k named qubits of the layer.
///
/// k = 0 means no access at all and always yields 1/2.
enum class ControlMode { full, rank_limited, spectral, qubit_subset };

std::string_view to_string(ControlMode m);

struct ControlSpec {
    ControlMode mode = ControlMode::full;
    int controlled_qubits = 0;
    /// Qubit indices within the layer (qubit_subset only).
    std::vector<std::size_t> subset;
    /// Unitary whose leading columns span Eve's subspace (rank_limited only).
    std::optional<ComplexMatrix> frame;
};

/// Haar-random control frame for a layer of dimension `dim`, drawn from a
/// stream of the scenario seed that the interaction chain does not use. The
/// subspace for k is contained in the one for k + 1.
ComplexMatrix random_control_frame(std::size_t dim, std::uint64_t seed);

struct EavesdropQuery {
    DensityMatrix rho0;
    DensityMatrix rho1;
    /// Prior probability of key bit 0.
    double lambda = 0.5;
    ControlSpec control;
};

struct EavesdropReport {
    double p_guess = 0.5;
    double mutual_information = 0.0;
    double key_rate = 1.0;
    ControlSpec control;
};

/// 1/2 + 1/2 || lambda rho0 - (1 - lambda) rho1 ||_1.
double helstrom_pguess(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda = 0.5);

/// Guessing probability for a partially controlled layer (any mode except
/// full, which it also accepts and forwards to helstrom_pguess).
double restricted_pguess(const EavesdropQuery &query);

/// Dispatches on query.control.mode.
double guessing_probability(const EavesdropQuery &query);

EavesdropReport eavesdrop(const EavesdropQuery &query);

/// Projectors onto the non-negative / negative eigenspaces of
/// lambda rho0 - (1 - lambda) rho1; measuring them attains helstrom_pguess.
ProjectorPair helstrom_measurement(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda = 0.5);

/// Success probability of guessing with the two-outcome POVM {e0, 1 - e0}.
double measurement_success(const DensityMatrix &rho0, const DensityMatrix &rho1, double lambda,
                           const ComplexMatrix &e0);

/// H(p) in bits, with 0 log 0 = 0.
double binary_entropy(double p);

/// I(E:A) = 1 + (1 - P) log2(1 - P) + P log2 P for P in [0.5, 1].
double mutual_information(double p_guess);

/// r = 1 - I(E:A).
double key_rate(double p_guess);

/// (1 - P) log2(1 - P) + P log2 P, the sign-flipped rate; equals
/// -key_rate(P). Kept for diagnostics.
double printed_general_key_rate(double p_guess);

/// Guessing probability for n single-qubit layers:
/// 1/2 + 1/2 q^{2n-1} / (p^2 + q^2)^{(2n-1)/2}.
double analytic_pguess(int n_layers, double epsilon, double alpha);

struct AnalyticKeyRate {
    double p_guess;
    /// key_rate(p_guess).
    double canonical;
    /// printed_general_key_rate(p_guess).
    double printed_general;
    /// Printed single-layer closed form; NaN unless n_layers == 1.
    double printed_single_layer;
    /// Printed n-layer closed form.
    double printed_n_layer;
};

AnalyticKeyRate analytic_key_rate(int n_layers, double epsilon, double alpha);

}  // namespace qdleak

#endif  // QDLEAK_EAVESDROPPER_HPP
