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

// The sphere / ellipsoid bundle of the two-qubit moduli space.
//
// For D = A D0(mu) A^dagger with A = exp(a) exp(a') the reduced purities
// become quadratic forms in mu:
//     tr (Tr_B D)^2 = 1/2 + (45/8) mu QA mu^T,
//     tr (Tr_A D)^2 = 1/2 + (45/8) mu QB mu^T,
// where QA, QB are built from the adjoint matrix O of A:
//     QA_{ab} = (4/3) sum_{i = 1,2,3} O_{a i} O_{b i},
//     QB_{ab} = (4/3) sum_{i = 4,5,6} O_{a i} O_{b i},
// with a, b running over the torus indices (3, 6, 15). Together with
// |mu| = 1 this gives a bundle of a unit 2-sphere and two centered
// ellipsoids mu Q mu^T = level.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swq/cubic.hpp"
#include "swq/kak.hpp"

namespace swq {

inline constexpr std::array<int, 3> kTorusIndices{3, 6, 15};  // 1-based lambda indices
inline constexpr double kRootTol = 1e-9;
inline constexpr double kRankTol = 1e-8;

// Level of mu Q mu^T at which the reduced purities equal 2 under the HS2
// convention: 1/2 + (45/8) level = 2.
inline constexpr double kCompositeQuadricLevel = 4.0 / 15.0;
// Commonly quoted level. Unreachable: mu (QA + QB) mu^T <= 4/3 < 2.
inline constexpr double kPrintedQuadricLevel = 1.0;

inline double reduced_purity_from_quadric(double quadric_value) { return 0.5 + 45.0 / 8.0 * quadric_value; }

struct QuadricTriple {
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d b = Eigen::Matrix3d::Zero();
    std::array<std::string, 3> mu_labels{"mu3", "mu6", "mu15"};
};

inline QuadricTriple ellipsoid_matrices(const AdjointMatrix& o) {
    QuadricTriple q;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const int alpha = kTorusIndices[static_cast<std::size_t>(r)] - 1;
            const int beta = kTorusIndices[static_cast<std::size_t>(c)] - 1;
            double sa = 0.0, sb = 0.0;
            for (int i = 0; i < 3; ++i) sa += o(alpha, i) * o(beta, i);
            for (int i = 3; i < 6; ++i) sb += o(alpha, i) * o(beta, i);
            q.a(r, c) = 4.0 / 3.0 * sa;
            q.b(r, c) = 4.0 / 3.0 * sb;
        }
    }
    return q;
}

inline QuadricTriple ellipsoid_matrices_for(const Vec3& a_params, const Vec3& a_prime_params,
                                            const LambdaBasis& b = LambdaBasis{}) {
    return ellipsoid_matrices(adjoint_matrix(a_factor(b, a_params, a_prime_params), b));
}

// det(t M + N) = t^3 det M + t^2 tr(adj(M) N) + t tr(M adj(N)) + det N.
inline Cubic pencil_cubic(const Eigen::Matrix3d& m, const Eigen::Matrix3d& n) {
    auto adj = [](const Eigen::Matrix3d& x) -> Eigen::Matrix3d {
        Eigen::Matrix3d c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
                c(j, i) = x(i1, j1) * x(i2, j2) - x(i1, j2) * x(i2, j1);
            }
        return c;
    };
    return {n.determinant(), (m * adj(n)).trace(), (adj(m) * n).trace(), m.determinant()};
}

enum class Overlap { Overlap, NoOverlap, Degenerate };

inline const char* to_string(Overlap c) {
    switch (c) {
        case Overlap::Overlap: return "overlap";
        case Overlap::NoOverlap: return "no_overlap";
        case Overlap::Degenerate: return "degenerate";
    }
    return "?";
}

struct RootReport {
    using Roots = std::vector<std::complex<double>>;
    // eigenvalue path: -eig(QA), -eig(QB), -eig(QB, QA); ascending
    Roots roots_sphere_a;
    Roots roots_sphere_b;
    Roots roots_ab;  // empty when QA is not positive definite
    // polynomial path (coefficients and their roots)
    Cubic cubic_sphere_a{};
    Cubic cubic_sphere_b{};
    Cubic cubic_ab{};
    Roots cubic_roots_sphere_a;
    Roots cubic_roots_sphere_b;
    Roots cubic_roots_ab;

    Eigen::Vector3d eig_a = Eigen::Vector3d::Zero();  // descending
    Eigen::Vector3d eig_b = Eigen::Vector3d::Zero();
    int rank_a = 0;
    int rank_b = 0;
    bool ab_degenerate = false;
    Overlap classification = Overlap::Degenerate;
};

inline bool is_real_root(const std::complex<double>& r, double tol = kRootTol) {
    return std::abs(r.imag()) <= tol * std::max(1.0, std::abs(r.real()));
}

inline bool has_positive_root(const RootReport::Roots& roots, double tol = kRootTol) {
    for (const auto& r : roots)
        if (is_real_root(r) && r.real() > tol) return true;
    return false;
}

inline bool has_negative_root(const RootReport::Roots& roots, double tol = kRootTol) {
    for (const auto& r : roots)
        if (is_real_root(r) && r.real() < -tol) return true;
    return false;
}

namespace detail {

inline Eigen::Vector3d sym_eigenvalues_desc(const Eigen::Matrix3d& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

inline RootReport::Roots negated_ascending(const Eigen::Vector3d& desc) {
    return {std::complex<double>(-desc(0)), std::complex<double>(-desc(1)), std::complex<double>(-desc(2))};
}

inline int count_rank(const Eigen::Vector3d& ev) {
    int r = 0;
    for (int i = 0; i < 3; ++i)
        if (ev(i) > kRankTol) ++r;
    return r;
}

}  // namespace detail

// Roots of det(t I + QA), det(t I + QB) and det(t QA + QB), and the overlap
// verdict: overlap iff none of the three has a root above kRootTol.
// Quadrics of rank < 3 are not ellipsoids; they are classified degenerate.
inline RootReport char_cubic_roots(const QuadricTriple& q) {
    RootReport r;
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    r.eig_a = detail::sym_eigenvalues_desc(q.a);
    r.eig_b = detail::sym_eigenvalues_desc(q.b);
    r.rank_a = detail::count_rank(r.eig_a);
    r.rank_b = detail::count_rank(r.eig_b);
    r.roots_sphere_a = detail::negated_ascending(r.eig_a);
    r.roots_sphere_b = detail::negated_ascending(r.eig_b);

    r.cubic_sphere_a = pencil_cubic(id, q.a);
    r.cubic_sphere_b = pencil_cubic(id, q.b);
    r.cubic_ab = pencil_cubic(q.a, q.b);
    r.cubic_roots_sphere_a = solve_cubic(r.cubic_sphere_a);
    r.cubic_roots_sphere_b = solve_cubic(r.cubic_sphere_b);
    r.cubic_roots_ab = solve_cubic(r.cubic_ab);

    // symmetric-definite reduction QA = L L^T, eig(L^-1 QB L^-T)
    r.ab_degenerate = !(r.eig_a(2) > kRankTol);
    if (!r.ab_degenerate) {
        Eigen::LLT<Eigen::Matrix3d> llt(0.5 * (q.a + q.a.transpose()));
        if (llt.info() != Eigen::Success) {
            r.ab_degenerate = true;
        } else {
            const Eigen::Matrix3d l_inv = llt.matrixL().solve(id);
            const Eigen::Matrix3d c = l_inv * (0.5 * (q.b + q.b.transpose())) * l_inv.transpose();
            r.roots_ab = detail::negated_ascending(detail::sym_eigenvalues_desc(c));
        }
    }

    if (r.rank_a < 3 || r.rank_b < 3 || r.ab_degenerate) {
        r.classification = Overlap::Degenerate;
    } else {
        const bool positive = has_positive_root(r.roots_sphere_a) || has_positive_root(r.roots_sphere_b) ||
                              has_positive_root(r.roots_ab);
        r.classification = positive ? Overlap::NoOverlap : Overlap::Overlap;
    }
    return r;
}

// Each nondegenerate characteristic cubic has at least one root < -kRootTol.
inline bool negative_root_property(const RootReport& r) {
    if (r.classification == Overlap::Degenerate) return true;
    return has_negative_root(r.roots_sphere_a) && has_negative_root(r.roots_sphere_b) &&
           has_negative_root(r.roots_ab);
}

namespace detail {

struct Icosphere {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::vector<int>> neighbours;
};

inline Icosphere build_icosphere(int subdivisions) {
    Icosphere s;
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    const double raw[12][3] = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                               {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (const auto& v : raw) s.vertices.push_back(Eigen::Vector3d(v[0], v[1], v[2]).normalized());
    s.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
               {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
               {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int i, int j) {
            const auto key = std::minmax(i, j);
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            s.vertices.push_back((s.vertices[static_cast<std::size_t>(i)] + s.vertices[static_cast<std::size_t>(j)])
                                     .normalized());
            const int idx = static_cast<int>(s.vertices.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(s.faces.size() * 4);
        for (const auto& f : s.faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        s.faces = std::move(next);
    }
    s.neighbours.resize(s.vertices.size());
    for (const auto& f : s.faces)
        for (int e = 0; e < 3; ++e) {
            auto& n = s.neighbours[static_cast<std::size_t>(f[static_cast<std::size_t>(e)])];
            for (int o = 0; o < 3; ++o)
                if (o != e) n.push_back(f[static_cast<std::size_t>(o)]);
        }
    return s;
}

inline const Icosphere& icosphere() {
    static const Icosphere s = build_icosphere(4);
    return s;
}

}  // namespace detail

struct FeasibilityResult {
    std::vector<Eigen::Vector3d> solutions;
    Overlap classification = Overlap::Degenerate;
    double max_residual = 0.0;
};

struct FeasibilityOptions {
    double level = kPrintedQuadricLevel;  // right-hand side of mu Q mu^T = level
    double dedup_tol = 1e-8;
    double accept_tol = 1e-10;
    int max_iterations = 50;
    double step_tol = 1e-12;
};

// Refines a point of the unit sphere towards mu QA mu^T = mu QB mu^T = level
// by Newton steps in an orthographic chart re-centred at every iterate.
inline std::optional<Eigen::Vector3d> refine_on_sphere(const QuadricTriple& q, Eigen::Vector3d mu,
                                                       const FeasibilityOptions& opt) {
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Eigen::Vector3d helper =
            std::abs(mu(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
        const Eigen::Vector3d e1 = (helper - helper.dot(mu) * mu).normalized();
        const Eigen::Vector3d e2 = mu.cross(e1);
        const Eigen::Vector2d f(mu.dot(q.a * mu) - opt.level, mu.dot(q.b * mu) - opt.level);
        Eigen::Matrix2d j;
        j << 2.0 * (q.a * mu).dot(e1), 2.0 * (q.a * mu).dot(e2), 2.0 * (q.b * mu).dot(e1), 2.0 * (q.b * mu).dot(e2);
        const double det = j.determinant();
        if (!(std::abs(det) > 1e-300)) return std::nullopt;
        const Eigen::Vector2d s = -j.inverse() * f;
        const double sn = s.norm();
        const double s_max = 0.5;
        const Eigen::Vector2d step = sn > s_max ? Eigen::Vector2d(s * (s_max / sn)) : s;
        const double tangent = std::min(step.squaredNorm(), 1.0);
        mu = (std::sqrt(1.0 - tangent) * mu + step(0) * e1 + step(1) * e2).normalized();
        if (sn < opt.step_tol) break;
    }
    const double res = std::max(std::abs(mu.dot(q.a * mu) - opt.level), std::abs(mu.dot(q.b * mu) - opt.level));
    if (res < opt.accept_tol) return mu;
    return std::nullopt;
}

// Solves |mu| = 1, mu QA mu^T = level, mu QB mu^T = level. Seeds are the
// centroids of icosphere faces on which both quadric residuals change sign,
// plus vertices where the squared residual is a local minimum.
inline FeasibilityResult moduli_feasibility(const QuadricTriple& q, const FeasibilityOptions& opt = {}) {
    const auto& s = detail::icosphere();
    const std::size_t nv = s.vertices.size();
    std::vector<double> fa(nv), fb(nv), r2(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        const Eigen::Vector3d& v = s.vertices[i];
        fa[i] = v.dot(q.a * v) - opt.level;
        fb[i] = v.dot(q.b * v) - opt.level;
        r2[i] = fa[i] * fa[i] + fb[i] * fb[i];
    }
    std::vector<Eigen::Vector3d> seeds;
    auto changes_sign = [](double x, double y, double z) {
        return std::min({x, y, z}) <= 0.0 && std::max({x, y, z}) >= 0.0;
    };
    for (const auto& f : s.faces) {
        const auto i = static_cast<std::size_t>(f[0]), j = static_cast<std::size_t>(f[1]),
                   k = static_cast<std::size_t>(f[2]);
        if (changes_sign(fa[i], fa[j], fa[k]) && changes_sign(fb[i], fb[j], fb[k]))
            seeds.push_back((s.vertices[i] + s.vertices[j] + s.vertices[k]).normalized());
    }
    for (std::size_t i = 0; i < nv; ++i) {
        if (r2[i] > 1e-2) continue;
        bool local_min = true;
        for (int n : s.neighbours[i])
            if (r2[static_cast<std::size_t>(n)] < r2[i]) local_min = false;
        if (local_min) seeds.push_back(s.vertices[i]);
    }

    FeasibilityResult out;
    out.classification = char_cubic_roots(q).classification;
    for (const auto& seed : seeds) {
        const auto sol = refine_on_sphere(q, seed, opt);
        if (!sol) continue;
        bool dup = false;
        for (const auto& known : out.solutions)
            if ((known - *sol).norm() < opt.dedup_tol) dup = true;
        if (!dup) out.solutions.push_back(*sol);
    }
    std::sort(out.solutions.begin(), out.solutions.end(), [](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
        return std::lexicographical_compare(x.data(), x.data() + 3, y.data(), y.data() + 3);
    });
    for (const auto& mu : out.solutions) {
        out.max_residual = std::max({out.max_residual, std::abs(mu.norm() - 1.0),
                                     std::abs(mu.dot(q.a * mu) - opt.level), std::abs(mu.dot(q.b * mu) - opt.level)});
    }
    return out;
}

}  // namespace swq
