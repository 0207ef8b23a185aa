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

// Independent reference computations used by the tests. Nothing here calls
// the library routine it is checking.

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swq/swq.hpp"

namespace swq::oracle {

// Entry-by-entry Kronecker product.
inline ComplexMatrix kron_loops(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index p = a.rows(), q = b.rows();
    ComplexMatrix out(p * q, p * q);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            for (Eigen::Index k = 0; k < q; ++k)
                for (Eigen::Index l = 0; l < q; ++l) out(i * q + k, j * q + l) = a(i, j) * b(k, l);
    return out;
}

// Partial trace through the duality tr(Tr_B X Y) = tr(X (Y (x) I)):
// entry (i, j) of Tr_B X is tr(X (|j><i| (x) I)).
inline ComplexMatrix partial_trace_dual(const ComplexMatrix& x, BipartiteDims d, Subsystem keep) {
    const std::size_t nk = d.of(keep);
    ComplexMatrix out(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < nk; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
            e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
            const ComplexMatrix y = keep == Subsystem::A ? kron_loops(e, ComplexMatrix::Identity(d.n_b, d.n_b))
                                                         : kron_loops(ComplexMatrix::Identity(d.n_a, d.n_a), e);
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (x * y).trace();
        }
    return out;
}

// Taylor series with scaling and squaring, long double accumulation.
inline ComplexMatrix exp_series(const ComplexMatrix& x) {
    using CL = std::complex<long double>;
    using ML = Eigen::Matrix<CL, Eigen::Dynamic, Eigen::Dynamic>;
    const double nrm = x.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (std::ldexp(nrm, -s) > 0.25) ++s;
    ML a = x.cast<CL>() * static_cast<long double>(std::ldexp(1.0, -s));
    ML term = ML::Identity(a.rows(), a.cols()), sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * a / static_cast<long double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    ComplexMatrix out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out(i, j) = Complex(static_cast<double>(sum(i, j).real()), static_cast<double>(sum(i, j).imag()));
    return out;
}

// Clifford groups are unitary 2-designs, so their average reproduces the
// Haar second moment exactly. Elements are enumerated modulo global phase.
namespace detail {

inline std::string phase_key(const ComplexMatrix& u) {
    Complex ph(0.0, 0.0);
    for (Eigen::Index k = 0; k < u.size(); ++k)
        if (std::abs(u(k)) > 1e-6) {
            ph = std::abs(u(k)) / u(k);
            break;
        }
    std::string key;
    char buf[48];
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        const Complex z = u(k) * ph;
        std::snprintf(buf, sizeof buf, "%.6f,%.6f;", z.real() + 0.0, z.imag() + 0.0);
        key += buf;
    }
    return key;
}

}  // namespace detail

inline std::vector<ComplexMatrix> clifford_group(int qubits) {
    const Complex i1(0.0, 1.0);
    ComplexMatrix h(2, 2), s(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    s << 1, 0, 0, i1;
    std::vector<ComplexMatrix> gens;
    if (qubits == 1) {
        gens = {h, s};
    } else {
        const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
        ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
        cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
        gens = {kron_loops(h, id2), kron_loops(id2, h), kron_loops(s, id2), kron_loops(id2, s), cnot};
    }
    const Eigen::Index d = gens[0].rows();
    std::map<std::string, bool> seen;
    std::vector<ComplexMatrix> out;
    std::deque<ComplexMatrix> todo{ComplexMatrix::Identity(d, d)};
    seen[detail::phase_key(todo.front())] = true;
    while (!todo.empty()) {
        const ComplexMatrix u = todo.front();
        todo.pop_front();
        out.push_back(u);
        for (const auto& g : gens) {
            const ComplexMatrix v = g * u;
            auto [it, fresh] = seen.emplace(detail::phase_key(v), true);
            if (fresh) todo.push_back(v);
        }
    }
    return out;
}

// N * mean_C (C D C^dag) tr(rho C D C^dag) over a 2-design.
inline ComplexMatrix twirl_design(const std::vector<ComplexMatrix>& design, const ComplexMatrix& rho,
                                  const ComplexMatrix& d0) {
    ComplexMatrix acc = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& c : design) {
        const ComplexMatrix d = c * d0 * c.adjoint();
        acc += d * (rho * d).trace();
    }
    return acc * (static_cast<double>(rho.rows()) / static_cast<double>(design.size()));
}

// 3x3 determinant by cofactor expansion.
inline double det3(const Eigen::Matrix3d& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Coefficients c0..c3 of det(t M + N) from four samples (Lagrange at t=0,1,-1,2).
inline std::array<double, 4> pencil_coeffs_by_interpolation(const Eigen::Matrix3d& m, const Eigen::Matrix3d& n) {
    const double f0 = det3(n), f1 = det3(m + n), fm = det3(-m + n), f2 = det3(2 * m + n);
    const double c0 = f0;
    const double c2 = 0.5 * (f1 + fm) - f0;
    // f1 - fm = 2 c1 + 2 c3 ;  f2 = c0 + 2c1 + 4c2 + 8c3
    const double s = 0.5 * (f1 - fm);  // c1 + c3
    const double c3 = (f2 - c0 - 4 * c2 - 2 * s) / 6.0;
    return {c0, s - c3, c2, c3};
}

// Unit sphere sample points from a Fibonacci lattice.
inline std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t m) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(m);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < m; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(m);
        const double r = std::sqrt(1.0 - z * z), th = golden * static_cast<double>(i);
        pts.emplace_back(r * std::cos(th), r * std::sin(th), z);
    }
    return pts;
}

// Brute-force overlap: does any of m points of the closed unit ball lie inside
// the sphere and both ellipsoids at once? Points are drawn uniformly in the
// ball; the origin is not included explicitly.
inline bool overlap_by_sampling(const QuadricTriple& q, std::size_t m, Seed seed, double level = 1.0) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        Eigen::Vector3d p(g(rng), g(rng), g(rng));
        p *= std::cbrt(u(rng)) / p.norm();
        if (p.squaredNorm() <= 1.0 && p.dot(q.a * p) <= level && p.dot(q.b * p) <= level) return true;
    }
    return false;
}

// Smallest max(|mu A mu - level|, |mu B mu - level|) over a sphere lattice.
inline double min_quadric_residual(const QuadricTriple& q, std::size_t m, double level) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : fibonacci_sphere(m))
        best = std::min(best, std::max(std::abs(p.dot(q.a * p) - level), std::abs(p.dot(q.b * p) - level)));
    return best;
}

// Analytic gradient of the three composite constraints in the Gell-Mann chart:
// d tr(X + tG)^2 = 2 tr(X G), d tr(Tr_B(X + tG))^2 = 2 tr(Tr_B X Tr_B G).
inline RealMatrix constraint_gradient(const ComplexMatrix& x, BipartiteDims d) {
    const auto basis = gell_mann_basis(d.total());
    RealMatrix j(3, static_cast<Eigen::Index>(basis.size()));
    const ComplexMatrix xa = partial_trace_dual(x, d, Subsystem::A), xb = partial_trace_dual(x, d, Subsystem::B);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        j(0, c) = 2.0 * (x * basis[k]).trace().real();
        j(1, c) = 2.0 * (xa * partial_trace_dual(basis[k], d, Subsystem::A)).trace().real();
        j(2, c) = 2.0 * (xb * partial_trace_dual(basis[k], d, Subsystem::B)).trace().real();
    }
    return j;
}

// Nullity of X -> [X, delta] over real spans of generators, through the Gram
// matrix of the commutators.
inline int commutant_nullity(const ComplexMatrix& delta, const std::vector<ComplexMatrix>& gens, double tol) {
    const auto k = static_cast<Eigen::Index>(gens.size());
    std::vector<ComplexMatrix> c;
    for (const auto& g : gens) c.push_back(g * delta - delta * g);
    RealMatrix gram(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            gram(i, j) = (c[static_cast<std::size_t>(i)].adjoint() * c[static_cast<std::size_t>(j)]).trace().real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    int null = 0;
    for (Eigen::Index i = 0; i < k; ++i)
        if (es.eigenvalues()(i) < tol) ++null;
    return null;
}

// Moduli kernel at (g, mu), built by hand:
// 4 D = g (I + sqrt15 (mu1 s30 + mu2 s03 + mu3 s33)) g^dag.
inline ComplexMatrix moduli_kernel_by_hand(const ComplexMatrix& g, const Eigen::Vector3d& mu) {
    ComplexMatrix s3 = ComplexMatrix::Zero(2, 2), i2 = ComplexMatrix::Identity(2, 2);
    s3(0, 0) = 1.0;
    s3(1, 1) = -1.0;
    const ComplexMatrix inner = ComplexMatrix::Identity(4, 4) +
                                std::sqrt(15.0) * (mu(0) * kron_loops(s3, i2) + mu(1) * kron_loops(i2, s3) +
                                                   mu(2) * kron_loops(s3, s3));
    return g * inner * g.adjoint() / 4.0;
}

}  // namespace swq::oracle
