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

#ifndef QDLEAK_RANDOM_HPP
#define QDLEAK_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "qdleak/tensor.hpp"

namespace qdleak {

/// Seeded generator. Every random draw in the library goes through one of
/// these, so a seed fully determines the output bits.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    complex complex_normal();

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Pure hash of a base seed and a list of integer coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates);

/// Haar-distributed unitary: complex Ginibre matrix orthonormalized with the
/// positive-diagonal-R QR convention.
ComplexMatrix haar_unitary(std::size_t dim, Rng &rng, std::size_t dimension_limit = kDefaultDimensionLimit);

struct ProjectorPair {
    ComplexMatrix p0;
    ComplexMatrix p1;
};

/// Complementary orthogonal projectors from the spectrum of a random real
/// symmetric matrix (M + M^T)/2 with i.i.d. standard-normal M: p0 spans the
/// `rank0` eigenvectors with the largest eigenvalues, p1 the rest.
ProjectorPair random_complementary_projectors(std::size_t dim, std::size_t rank0, Rng &rng);

}  // namespace qdleak

#endif  // QDLEAK_RANDOM_HPP
