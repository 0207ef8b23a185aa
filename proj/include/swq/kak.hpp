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

// SU(4) elements in the factorized form g = K A T with
//   K = exp(k),  A = exp(a) exp(a'),  T = exp(k'),
// the adjoint action of SU(4) on the lambda basis, and the two-qubit
// kernels parametrized by a unitary and a point of the unit 2-sphere.

#pragma once

#include <array>
#include <cmath>

#include "swq/kernel.hpp"
#include "swq/lambda_basis.hpp"

namespace swq {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;
using AdjointMatrix = Eigen::Matrix<double, 15, 15>;

struct KakElement {
    Vec6 k_params{};
    Vec3 a_params{};
    Vec3 a_prime_params{};
    Vec3 t_params{};
    ComplexMatrix k_factor;
    ComplexMatrix a_factor;
    ComplexMatrix t_factor;

    ComplexMatrix group_element() const { return k_factor * a_factor * t_factor; }
};

inline ComplexMatrix a_factor(const LambdaBasis& b, const Vec3& a_params, const Vec3& a_prime_params) {
    return mat_exp(b.combination(LambdaBasis::kA, a_params)) *
           mat_exp(b.combination(LambdaBasis::kAPrime, a_prime_params));
}

inline KakElement kak_element(const Vec6& k_params, const Vec3& a_params, const Vec3& a_prime_params,
                              const Vec3& t_params, const LambdaBasis& b = LambdaBasis{}) {
    KakElement e;
    e.k_params = k_params;
    e.a_params = a_params;
    e.a_prime_params = a_prime_params;
    e.t_params = t_params;
    e.k_factor = mat_exp(b.combination(LambdaBasis::kK, k_params));
    e.a_factor = a_factor(b, a_params, a_prime_params);
    e.t_factor = mat_exp(b.combination(LambdaBasis::kKPrime, t_params));
    return e;
}

// A lambda_nu A^dagger = sum_mu O_{nu mu} lambda_mu, O_{nu mu} = -tr(A lambda_nu A^dag lambda_mu).
inline AdjointMatrix adjoint_matrix(const ComplexMatrix& u, const LambdaBasis& b = LambdaBasis{}) {
    if (dim(u) != 4 || u.cols() != 4) throw DimensionError("adjoint_matrix: expected a 4x4 matrix");
    if (unitarity_defect(u) > kDefaultTol) throw std::invalid_argument("adjoint_matrix: matrix is not unitary");
    AdjointMatrix o;
    for (int nu = 1; nu <= 15; ++nu) {
        const ComplexMatrix rotated = conjugate_by(u, b(nu));
        for (int mu = 1; mu <= 15; ++mu) o(nu - 1, mu - 1) = -trace_product(rotated, b(mu)).real();
    }
    return o;
}

// Largest |Im| over the adjoint entries; zero up to rounding for unitary u.
inline double adjoint_imaginary_defect(const ComplexMatrix& u, const LambdaBasis& b = LambdaBasis{}) {
    double worst = 0.0;
    for (int nu = 1; nu <= 15; ++nu) {
        const ComplexMatrix rotated = conjugate_by(u, b(nu));
        for (int mu = 1; mu <= 15; ++mu) worst = std::max(worst, std::abs(trace_product(rotated, b(mu)).imag()));
    }
    return worst;
}

// 4 D = U (I + sqrt(15) (mu_1 s30 + mu_2 s03 + mu_3 s33)) U^dagger, |mu| = 1.
// The torus generators enter through their Hermitian representatives; the
// coefficient sqrt(15) = sqrt(30)/sqrt(2) is the HS2 form of sqrt(30).
inline SWKernel kernel_from_moduli(const ComplexMatrix& u, const Eigen::Vector3d& mu) {
    if (std::abs(mu.norm() - 1.0) > 1e-12) throw std::invalid_argument("kernel_from_moduli: |mu| must be 1");
    if (dim(u) != 4 || u.cols() != 4) throw DimensionError("kernel_from_moduli: expected a 4x4 unitary");
    if (unitarity_defect(u) > kDefaultTol) throw std::invalid_argument("kernel_from_moduli: matrix is not unitary");
    const double r = std::sqrt(15.0);
    const ComplexMatrix d0 =
        identity(4) + r * (mu(0) * sigma(3, 0) + mu(1) * sigma(0, 3) + mu(2) * sigma(3, 3));
    return SWKernel(hermitian_part(conjugate_by(u, d0)) / 4.0);
}

// Eigenvalues of kernel_from_moduli(U, mu) are (1 + sqrt(15) d_k) / 4 with
// d = (m1 + m2 + m3, m1 - m2 - m3, -m1 + m2 - m3, -m1 - m2 + m3).
inline Eigen::Vector4d moduli_eigen_pattern(const Eigen::Vector3d& mu) {
    return {mu(0) + mu(1) + mu(2), mu(0) - mu(1) - mu(2), -mu(0) + mu(1) - mu(2), -mu(0) - mu(1) + mu(2)};
}

enum class IsotropyAlgebra { LuLocal, FullSu4, KTwisted };

inline std::size_t algebra_dim(IsotropyAlgebra alg) { return alg == IsotropyAlgebra::FullSu4 ? 15 : 6; }

inline std::vector<ComplexMatrix> algebra_generators(IsotropyAlgebra alg, const LambdaBasis& b) {
    switch (alg) {
        case IsotropyAlgebra::LuLocal: return b.generators(LambdaBasis::kLocal);
        case IsotropyAlgebra::KTwisted: return b.generators(LambdaBasis::kK);
        case IsotropyAlgebra::FullSu4: return b.all();
    }
    return {};
}

// Nullity of X -> [X, D] on the chosen subalgebra. Orbit dimension is
// algebra_dim(alg) - isotropy_dim(...).
inline std::size_t isotropy_dim(const ComplexMatrix& delta, IsotropyAlgebra alg, double sv_tol = 1e-9,
                                const LambdaBasis& b = LambdaBasis{}) {
    if (dim(delta) != 4 || delta.cols() != 4) throw DimensionError("isotropy_dim: expected a 4x4 matrix");
    if (hermitian_defect(delta) > 1e-10) throw std::invalid_argument("isotropy_dim: matrix is not Hermitian");
    const auto gens = algebra_generators(alg, b);
    RealMatrix m(32, static_cast<Eigen::Index>(gens.size()));
    for (std::size_t c = 0; c < gens.size(); ++c) {
        const ComplexMatrix comm = commutator(gens[c], delta);
        const Eigen::Map<const Eigen::VectorXcd> v(comm.data(), 16);
        m.col(static_cast<Eigen::Index>(c)) << v.real(), v.imag();
    }
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const RealVector s = svd.singularValues();
    std::size_t nullity = gens.size() - static_cast<std::size_t>(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) < sv_tol) ++nullity;
    return nullity;
}

inline std::size_t orbit_dim(const ComplexMatrix& delta, IsotropyAlgebra alg) {
    return algebra_dim(alg) - isotropy_dim(delta, alg);
}

}  // namespace swq
