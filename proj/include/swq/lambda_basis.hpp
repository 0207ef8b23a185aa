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

#include <algorithm>
#include <array>
#include <cstdlib>
#include <vector>

#include "swq/pauli.hpp"

namespace swq {

// Signed 1-based reference to a generator: -14 means -lambda_14.
using SignedIndex = int;

// lambda_1 .. lambda_15 = (i/2) { s10, s20, s30, s01, s02, s03, s11, s12, s13,
//                                 s21, s22, s23, s31, s32, s33 }
// orthonormal for <X, Y> = -tr(X Y), with the split
//   su(4) = k (+) a (+) a' (+) k'
//   a  = span{l11, l9, l13}           a' = span{l4, l1, l7}
//   k' = span{l3, l6, l15} (torus)    k  = span{-l14, l2, -l8; -l5, l12, -l10}
class LambdaBasis {
  public:
    static constexpr std::array<std::array<int, 2>, 15> kPauliLabels{{{1, 0}, {2, 0}, {3, 0}, {0, 1}, {0, 2},
                                                                      {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 1},
                                                                      {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}}};
    static constexpr std::array<SignedIndex, 3> kA{11, 9, 13};
    static constexpr std::array<SignedIndex, 3> kAPrime{4, 1, 7};
    static constexpr std::array<SignedIndex, 3> kKPrime{3, 6, 15};
    static constexpr std::array<SignedIndex, 6> kK{-14, 2, -8, -5, 12, -10};
    static constexpr std::array<SignedIndex, 6> kLocal{1, 2, 3, 4, 5, 6};

    LambdaBasis() {
        for (std::size_t k = 0; k < 15; ++k)
            lambdas_[k] = Complex(0.0, 0.5) * sigma(kPauliLabels[k][0], kPauliLabels[k][1]);
    }

    // 1-based
    const ComplexMatrix& operator()(int k) const { return lambdas_.at(static_cast<std::size_t>(k - 1)); }

    ComplexMatrix signed_generator(SignedIndex s) const { return s < 0 ? ComplexMatrix(-(*this)(-s)) : (*this)(s); }

    template <std::size_t M>
    std::vector<ComplexMatrix> generators(const std::array<SignedIndex, M>& idx) const {
        std::vector<ComplexMatrix> out;
        out.reserve(M);
        for (SignedIndex s : idx) out.push_back(signed_generator(s));
        return out;
    }

    std::vector<ComplexMatrix> all() const { return {lambdas_.begin(), lambdas_.end()}; }

    // Coordinates of an element of su(4): c_k = -tr(x lambda_k).
    Eigen::Matrix<double, 15, 1> coordinates(const ComplexMatrix& x) const {
        Eigen::Matrix<double, 15, 1> c;
        for (int k = 1; k <= 15; ++k) c(k - 1) = -trace_product(x, (*this)(k)).real();
        return c;
    }

    // sum_i c_i g_i over the given generators
    template <class Params, std::size_t M>
    ComplexMatrix combination(const std::array<SignedIndex, M>& idx, const Params& c) const {
        ComplexMatrix x = ComplexMatrix::Zero(4, 4);
        for (std::size_t i = 0; i < M; ++i) x += c[i] * signed_generator(idx[i]);
        return x;
    }

  private:
    std::array<ComplexMatrix, 15> lambdas_;
};

inline LambdaBasis build_lambda_basis() { return LambdaBasis{}; }

// Orthonormality defect: max_ij | -tr(l_i l_j) - delta_ij |.
inline double orthonormality_defect(const LambdaBasis& b) {
    double worst = 0.0;
    for (int i = 1; i <= 15; ++i)
        for (int j = 1; j <= 15; ++j)
            worst = std::max(worst, std::abs(-trace_product(b(i), b(j)) - Complex(i == j ? 1.0 : 0.0, 0.0)));
    return worst;
}

// Frobenius norm of the component of y orthogonal to span(target).
// target must be orthonormal for -tr(X Y).
inline double out_of_span(const ComplexMatrix& y, const std::vector<ComplexMatrix>& target) {
    ComplexMatrix r = y;
    for (const auto& t : target) r -= (-trace_product(y, t).real()) * t;
    return r.norm();
}

// max over pairs (x in s1, y in s2) of the out-of-span residual of [x, y].
inline double closure_residual(const std::vector<ComplexMatrix>& s1, const std::vector<ComplexMatrix>& s2,
                               const std::vector<ComplexMatrix>& target) {
    double worst = 0.0;
    for (const auto& x : s1)
        for (const auto& y : s2) worst = std::max(worst, out_of_span(commutator(x, y), target));
    return worst;
}

inline double abelian_residual(const std::vector<ComplexMatrix>& s) {
    double worst = 0.0;
    for (const auto& x : s)
        for (const auto& y : s) worst = std::max(worst, commutator(x, y).norm());
    return worst;
}

inline std::vector<ComplexMatrix> concat(std::vector<ComplexMatrix> a, const std::vector<ComplexMatrix>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// 1-based indices of the lambdas with a non-negligible component in the
// commutators [x, y], x in s1, y in s2.
inline std::vector<int> commutator_support(const LambdaBasis& b, const std::vector<ComplexMatrix>& s1,
                                           const std::vector<ComplexMatrix>& s2, double tol = 1e-13) {
    std::array<bool, 15> hit{};
    for (const auto& x : s1)
        for (const auto& y : s2) {
            const auto c = b.coordinates(commutator(x, y));
            for (int k = 0; k < 15; ++k)
                if (std::abs(c(k)) > tol) hit[static_cast<std::size_t>(k)] = true;
        }
    std::vector<int> out;
    for (int k = 0; k < 15; ++k)
        if (hit[static_cast<std::size_t>(k)]) out.push_back(k + 1);
    return out;
}

struct AlgebraReport {
    double orthonormality = 0.0;
    double abelian_a = 0.0;
    double abelian_a_prime = 0.0;
    double abelian_k_prime = 0.0;
    double closure_k = 0.0;           // [k, k] in k
    double closure_k_prime = 0.0;     // [k', k'] in k'
    double k_k_prime = 0.0;           // [k, k'] in a (+) a'
    std::vector<int> a_prime_a_span;  // support of [a', a]

    double max_residual() const {
        return std::max({orthonormality, abelian_a, abelian_a_prime, abelian_k_prime, closure_k, closure_k_prime,
                         k_k_prime});
    }
};

inline AlgebraReport check_algebra(const LambdaBasis& b) {
    const auto a = b.generators(LambdaBasis::kA);
    const auto ap = b.generators(LambdaBasis::kAPrime);
    const auto kp = b.generators(LambdaBasis::kKPrime);
    const auto k = b.generators(LambdaBasis::kK);
    AlgebraReport r;
    r.orthonormality = orthonormality_defect(b);
    r.abelian_a = abelian_residual(a);
    r.abelian_a_prime = abelian_residual(ap);
    r.abelian_k_prime = abelian_residual(kp);
    r.closure_k = closure_residual(k, k, k);
    r.closure_k_prime = closure_residual(kp, kp, kp);
    r.k_k_prime = closure_residual(k, kp, concat(a, ap));
    r.a_prime_a_span = commutator_support(b, ap, a);
    return r;
}

}  // namespace swq
