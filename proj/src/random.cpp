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

#include "qdleak/random.hpp"

#include <cmath>
#include <string>

#include "qdleak/errors.hpp"
#include "qdleak/linalg.hpp"

namespace qdleak {

complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates) {
    std::uint64_t h = mix64(base);
    for (auto c : coordinates) {
        h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
    }
    return h;
}

ComplexMatrix haar_unitary(std::size_t dim, Rng &rng, std::size_t dimension_limit) {
    if (dim == 0) {
        throw ArgumentError("haar_unitary: dimension must be positive");
    }
    if (dim > dimension_limit) {
        throw DimensionLimitError("haar_unitary: dimension " + std::to_string(dim) + " exceeds limit " +
                                  std::to_string(dimension_limit));
    }
    ComplexMatrix g(dim, dim);
    for (auto &x : g.data()) x = rng.complex_normal();
    return orthonormalize_qr(g);
}

ProjectorPair random_complementary_projectors(std::size_t dim, std::size_t rank0, Rng &rng) {
    if (rank0 < 1 || rank0 >= dim) {
        throw ArgumentError("random_complementary_projectors: rank " + std::to_string(rank0) +
                            " outside [1, " + std::to_string(dim) + ")");
    }
    ComplexMatrix m(dim, dim);
    for (auto &x : m.data()) x = rng.normal();
    ComplexMatrix sym(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) sym(r, c) = 0.5 * (m(r, c) + m(c, r));
    }
    // herm_eig orders eigenvalues descending, so the first rank0 columns are
    // the top of the spectrum (ties resolved by column order).
    const HermEig eig = herm_eig(sym);
    ProjectorPair out{ComplexMatrix(dim, dim), ComplexMatrix(dim, dim)};
    for (std::size_t k = 0; k < dim; ++k) {
        ComplexMatrix &target = k < rank0 ? out.p0 : out.p1;
        for (std::size_t r = 0; r < dim; ++r) {
            const complex vr = eig.vectors(r, k);
            for (std::size_t c = 0; c < dim; ++c) {
                target(r, c) += vr * std::conj(eig.vectors(c, k));
            }
        }
    }
    return out;
}

}  // namespace qdleak
