// Copyright 2026 The swq Authors
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

#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "swq/matrix.hpp"

namespace swq {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

inline constexpr Seed kDefaultSeed = 20220523;

// SplitMix64 finalizer; used to derive independent child seeds from
// (master seed, task index) so fan-out work stays reproducible.
inline Seed mix_seed(Seed x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Seed child_seed(Seed master, std::uint64_t index) {
    return mix_seed(mix_seed(master) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(Seed seed) { return Rng(mix_seed(seed)); }

inline double std_normal(Rng& rng) {
    // Box-Muller; std::normal_distribution is not specified bit-for-bit
    // across standard libraries.
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u1 = uni(rng);
    while (u1 <= 0.0) u1 = uni(rng);
    const double u2 = uni(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Ginibre matrix: iid entries with E|g|^2 = 1.
inline ComplexMatrix ginibre(std::size_t n, Rng& rng) {
    const auto m = static_cast<Eigen::Index>(n);
    ComplexMatrix g(m, m);
    const double s = std::sqrt(0.5);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) g(i, j) = Complex(s * std_normal(rng), s * std_normal(rng));
    return g;
}

// Haar-distributed element of SU(n): QR of a Ginibre matrix with the phases of
// diag(R) absorbed into Q, then the global phase fixed so that det U = 1.
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
    const ComplexMatrix g = ginibre(n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    const Complex det = q.determinant();
    q *= std::exp(Complex(0.0, -std::arg(det) / static_cast<double>(n)));
    return q;
}

inline ComplexMatrix haar_unitary(std::size_t n, Seed seed) {
    Rng rng = make_rng(seed);
    return haar_unitary(n, rng);
}

// Random Hermitian matrix from the Gaussian unitary ensemble.
inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix g = ginibre(n, rng);
    return 0.5 * (g + g.adjoint());
}

// G G^dagger / tr(G G^dagger) with G Ginibre; full rank with probability one.
inline DensityMatrix random_density(std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("random_density: n must be >= 1");
    const ComplexMatrix g = ginibre(n, rng);
    ComplexMatrix w = g * g.adjoint();
    w = 0.5 * (w + w.adjoint());
    w /= w.trace().real();
    return DensityMatrix(std::move(w));
}

inline DensityMatrix random_density(std::size_t n, Seed seed) {
    Rng rng = make_rng(seed);
    return random_density(n, rng);
}

}  // namespace swq
