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

// Kernels of bipartite systems H_A (x) H_B.
//
// On top of the elementary conditions (Hermitian, tr D = 1, tr D^2 = N) a
// composite kernel satisfies
//     tr (Tr_B D)^2 = n_a,    tr (Tr_A D)^2 = n_b,
// so that its partial traces are themselves kernels of the subsystems and
// subsystem Wigner functions are obtained by pairing reduced states with
// reduced kernels.

#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "swq/kernel.hpp"
#include "swq/matrix.hpp"
#include "swq/random.hpp"

namespace swq {

// Generalized Gell-Mann basis of su(n), Hilbert-Schmidt orthonormal:
// tr(G_i G_j) = delta_ij. Order: for each pair j < k the symmetric then the
// antisymmetric element, followed by the n - 1 diagonal (Helmert) elements.
// For n = 2 this is (sigma_1, sigma_2, sigma_3) / sqrt(2).
inline std::vector<ComplexMatrix> gell_mann_basis(std::size_t n) {
    const auto m = static_cast<Eigen::Index>(n);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> out;
    out.reserve(n * n - 1);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = j + 1; k < m; ++k) {
            ComplexMatrix sym = ComplexMatrix::Zero(m, m);
            sym(j, k) = sym(k, j) = s;
            out.push_back(std::move(sym));
            ComplexMatrix asym = ComplexMatrix::Zero(m, m);
            asym(j, k) = Complex(0.0, -s);
            asym(k, j) = Complex(0.0, s);
            out.push_back(std::move(asym));
        }
    }
    const RealMatrix frame = helmert_frame(n);
    for (Eigen::Index c = 0; c < frame.cols(); ++c) out.push_back(frame.col(c).cast<Complex>().asDiagonal());
    return out;
}

// Orthogonal block split of a Hermitian operator on H_A (x) H_B:
//   X = identity_coeff * I + sum_i local_a_i (G_i (x) I)/sqrt(n_b)
//       + sum_j local_b_j (I (x) G_j)/sqrt(n_a) + sum_ij corr_ij G_i (x) G_j.
// All basis elements are Hilbert-Schmidt orthonormal, so
//   tr X^2 = N identity_coeff^2 + |local_a|^2 + |local_b|^2 + |corr|_F^2,
//   tr (Tr_B X)^2 = (tr X)^2 / n_a + n_b |local_a|^2.
struct FanoBlocks {
    BipartiteDims dims;
    double identity_coeff = 0.0;
    RealVector local_a;
    RealVector local_b;
    RealMatrix corr;
};

inline FanoBlocks fano_blocks(const ComplexMatrix& x, BipartiteDims dims) {
    require_square(x, "fano_blocks");
    if (dim(x) != dims.total()) throw DimensionError("fano_blocks: invalid bipartition");
    if (hermitian_defect(x) > 1e-10) throw std::invalid_argument("fano_blocks: matrix is not Hermitian");
    const auto ga = gell_mann_basis(dims.n_a);
    const auto gb = gell_mann_basis(dims.n_b);
    const double sa = std::sqrt(static_cast<double>(dims.n_a));
    const double sb = std::sqrt(static_cast<double>(dims.n_b));

    FanoBlocks f;
    f.dims = dims;
    f.identity_coeff = x.trace().real() / static_cast<double>(dims.total());
    // Tr_B X = (tr X / n_a) I + sqrt(n_b) sum_i local_a_i G_i, and likewise for A.
    const ComplexMatrix xa = partial_trace(x, dims, Subsystem::A);
    const ComplexMatrix xb = partial_trace(x, dims, Subsystem::B);
    f.local_a.resize(static_cast<Eigen::Index>(ga.size()));
    f.local_b.resize(static_cast<Eigen::Index>(gb.size()));
    for (std::size_t i = 0; i < ga.size(); ++i) f.local_a(static_cast<Eigen::Index>(i)) = trace_product(xa, ga[i]).real() / sb;
    for (std::size_t j = 0; j < gb.size(); ++j) f.local_b(static_cast<Eigen::Index>(j)) = trace_product(xb, gb[j]).real() / sa;
    f.corr.resize(static_cast<Eigen::Index>(ga.size()), static_cast<Eigen::Index>(gb.size()));
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < gb.size(); ++j)
            f.corr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                trace_product(x, kron(ga[i], gb[j])).real();
    return f;
}

inline ComplexMatrix compose(const FanoBlocks& f) {
    const auto ga = gell_mann_basis(f.dims.n_a);
    const auto gb = gell_mann_basis(f.dims.n_b);
    const ComplexMatrix ia = identity(f.dims.n_a), ib = identity(f.dims.n_b);
    const double sa = std::sqrt(static_cast<double>(f.dims.n_a));
    const double sb = std::sqrt(static_cast<double>(f.dims.n_b));
    ComplexMatrix x = f.identity_coeff * identity(f.dims.total());
    for (std::size_t i = 0; i < ga.size(); ++i) x += (f.local_a(static_cast<Eigen::Index>(i)) / sb) * kron(ga[i], ib);
    for (std::size_t j = 0; j < gb.size(); ++j) x += (f.local_b(static_cast<Eigen::Index>(j)) / sa) * kron(ia, gb[j]);
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < gb.size(); ++j)
            x += f.corr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * kron(ga[i], gb[j]);
    return x;
}

// Squared block norms that a composite kernel must have, obtained from
// tr D = 1, tr D^2 = N, tr (Tr_B D)^2 = n_a, tr (Tr_A D)^2 = n_b.
struct BlockTargets {
    double local_a;
    double local_b;
    double corr;
};

inline BlockTargets composite_block_targets(BipartiteDims dims) {
    const double na = static_cast<double>(dims.n_a), nb = static_cast<double>(dims.n_b);
    const double n = na * nb;
    const double a = (na - 1.0 / na) / nb;
    const double b = (nb - 1.0 / nb) / na;
    return {a, b, n - 1.0 / n - a - b};
}

struct CompositeReport {
    BipartiteDims dims;
    MasterReport eq6;
    double eq8_a = 0.0;  // |tr (Tr_B X)^2 - n_a|
    double eq8_b = 0.0;  // |tr (Tr_A X)^2 - n_b|

    bool admissible(double tol) const { return eq6.admissible(tol) && eq8_a <= tol && eq8_b <= tol; }
};

inline double reduced_purity(const ComplexMatrix& x, BipartiteDims dims, Subsystem keep) {
    const ComplexMatrix r = partial_trace(x, dims, keep);
    return trace_product(r, r).real();
}

inline CompositeReport verify_composite_master(const ComplexMatrix& x, BipartiteDims dims, double tol = kDefaultTol) {
    require_square(x, "verify_composite_master");
    if (dim(x) != dims.total()) throw DimensionError("verify_composite_master: invalid bipartition");
    CompositeReport r;
    r.dims = dims;
    r.eq6 = verify_master(x, dims.total(), tol);
    r.eq8_a = std::abs(reduced_purity(x, dims, Subsystem::A) - static_cast<double>(dims.n_a));
    r.eq8_b = std::abs(reduced_purity(x, dims, Subsystem::B) - static_cast<double>(dims.n_b));
    return r;
}

class CompositeConstraintError : public std::invalid_argument {
  public:
    CompositeConstraintError(double eq8_a, double eq8_b)
        : std::invalid_argument(message(eq8_a, eq8_b)), eq8_a_(eq8_a), eq8_b_(eq8_b) {}
    double eq8_a() const { return eq8_a_; }
    double eq8_b() const { return eq8_b_; }

  private:
    static std::string message(double a, double b) {
        std::ostringstream os;
        os << "composite kernel constraints violated: |tr(Tr_B D)^2 - n_a| = " << a
           << ", |tr(Tr_A D)^2 - n_b| = " << b;
        return os.str();
    }
    double eq8_a_, eq8_b_;
};

// A kernel on H_A (x) H_B whose partial traces are subsystem kernels.
class CompositeKernel {
  public:
    static constexpr double kTol = 1e-10;

    CompositeKernel(SWKernel kernel, BipartiteDims dims) : kernel_(std::move(kernel)), dims_(dims) {
        if (dims_.n_a < 1 || dims_.n_b < 1 || kernel_.n() != dims_.total())
            throw DimensionError("CompositeKernel: invalid bipartition");
        const CompositeReport r = verify_composite_master(kernel_.mat(), dims_);
        if (r.eq8_a > kTol || r.eq8_b > kTol) throw CompositeConstraintError(r.eq8_a, r.eq8_b);
    }

    const SWKernel& kernel() const { return kernel_; }
    const ComplexMatrix& mat() const { return kernel_.mat(); }
    BipartiteDims dims() const { return dims_; }

  private:
    SWKernel kernel_;
    BipartiteDims dims_;
};

// D_A = Tr_B D (keep A) or D_B = Tr_A D (keep B).
inline SWKernel reduce_kernel(const CompositeKernel& delta, Subsystem keep) {
    return SWKernel(hermitian_part(partial_trace(delta.mat(), delta.dims(), keep)));
}

inline SWKernel reduce_kernel(const ComplexMatrix& delta, BipartiteDims dims, Subsystem keep) {
    const CompositeReport r = verify_composite_master(delta, dims);
    if (r.eq8_a > CompositeKernel::kTol || r.eq8_b > CompositeKernel::kTol)
        throw CompositeConstraintError(r.eq8_a, r.eq8_b);
    return SWKernel(hermitian_part(partial_trace(delta, dims, keep)));
}

// W_{rho_A} = tr(rho_A D_A) with rho_A = Tr_B rho_AB, D_A = Tr_B D.
inline WignerValue subsystem_wigner(const DensityMatrix& rho_ab, const CompositeKernel& delta, Subsystem keep) {
    if (rho_ab.dim() != delta.dims().total()) throw DimensionError("subsystem_wigner: dimension mismatch");
    const ComplexMatrix rho_s = partial_trace(rho_ab.mat(), delta.dims(), keep);
    const ComplexMatrix d_s = partial_trace(delta.mat(), delta.dims(), keep);
    return wigner_value(rho_s, d_s);
}

// Same quantity evaluated on the full space: tr(rho_AB (D_A (x) I)).
inline WignerValue subsystem_wigner_embedded(const DensityMatrix& rho_ab, const CompositeKernel& delta,
                                             Subsystem keep) {
    const BipartiteDims d = delta.dims();
    if (rho_ab.dim() != d.total()) throw DimensionError("subsystem_wigner_embedded: dimension mismatch");
    const ComplexMatrix d_s = partial_trace(delta.mat(), d, keep);
    const ComplexMatrix lifted = keep == Subsystem::A ? kron(d_s, identity(d.n_b)) : kron(identity(d.n_a), d_s);
    return wigner_value(rho_ab.mat(), lifted);
}

// Random composite kernel: a GUE draw is split into Fano blocks and each block
// is rescaled to its target norm. The three blocks are orthogonal and each
// constraint involves exactly one of them, so the rescaling is exact.
inline CompositeKernel make_composite_kernel(BipartiteDims dims, Seed seed) {
    if (dims.n_a < 2 || dims.n_b < 2) throw std::invalid_argument("make_composite_kernel: n_a, n_b must be >= 2");
    constexpr int kMaxDraws = 64;
    constexpr double kMinNorm = 1e-6;
    const BlockTargets t = composite_block_targets(dims);
    Rng rng = make_rng(seed);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        FanoBlocks f = fano_blocks(random_hermitian(dims.total(), rng), dims);
        const double na = f.local_a.norm(), nb = f.local_b.norm(), nc = f.corr.norm();
        if (na < kMinNorm || nb < kMinNorm || nc < kMinNorm) continue;
        f.identity_coeff = 1.0 / static_cast<double>(dims.total());
        f.local_a *= std::sqrt(t.local_a) / na;
        f.local_b *= std::sqrt(t.local_b) / nb;
        f.corr *= std::sqrt(t.corr) / nc;
        return CompositeKernel(SWKernel(hermitian_part(compose(f))), dims);
    }
    throw NumericalError("make_composite_kernel: redraw budget exhausted");
}

inline CompositeKernel product_kernel(const SWKernel& a, const SWKernel& b) {
    return CompositeKernel(SWKernel(kron(a.mat(), b.mat())), BipartiteDims{a.n(), b.n()});
}

inline ComplexMatrix local_unitary(BipartiteDims dims, Rng& rng) {
    const ComplexMatrix ua = haar_unitary(dims.n_a, rng);
    const ComplexMatrix ub = haar_unitary(dims.n_b, rng);
    return kron(ua, ub);
}

// Dimension of the composite dual space: N^2 - 4 real parameters
// (N^2 for Hermitian matrices minus the four moment conditions).
inline long dual_dim(BipartiteDims dims) {
    const long n = static_cast<long>(dims.total());
    return n * n - 4;
}

struct JacobianRankReport {
    RealMatrix jacobian;             // 3 x (N^2 - 1)
    std::vector<double> singular;    // singular values of J, descending, zero-padded to N^2 - 1
    int rank = 0;
    double gap = 0.0;                // singular[rank - 1] / max(singular[rank], eps * singular[0])
};

// Finite-difference Jacobian of
//   X -> (tr X^2 - N, tr (Tr_B X)^2 - n_a, tr (Tr_A X)^2 - n_b)
// in the traceless-Hermitian chart X + sum_k t_k G_k, with G_k the Gell-Mann
// basis of su(N). The constraints are quadratic, so central differences are
// exact up to rounding. Rank counts singular values above
// rank_tol * max(1, sigma_1); the null directions of the (N^2-1)-column
// map are reported as zeros, with the gap measured against eps * sigma_1.
inline JacobianRankReport constraint_jacobian_rank(const ComplexMatrix& x, BipartiteDims dims, double step = 1e-4,
                                                   double rank_tol = 1e-8) {
    require_square(x, "constraint_jacobian_rank");
    if (dim(x) != dims.total()) throw DimensionError("constraint_jacobian_rank: invalid bipartition");
    const auto basis = gell_mann_basis(dims.total());
    auto constraints = [&](const ComplexMatrix& y) {
        Eigen::Vector3d c;
        c(0) = trace_product(y, y).real() - static_cast<double>(dims.total());
        c(1) = reduced_purity(y, dims, Subsystem::A) - static_cast<double>(dims.n_a);
        c(2) = reduced_purity(y, dims, Subsystem::B) - static_cast<double>(dims.n_b);
        return c;
    };
    JacobianRankReport r;
    r.jacobian.resize(3, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        r.jacobian.col(static_cast<Eigen::Index>(k)) =
            (constraints(x + step * basis[k]) - constraints(x - step * basis[k])) / (2.0 * step);
    }
    Eigen::JacobiSVD<RealMatrix> svd(r.jacobian);
    const RealVector sv = svd.singularValues();
    r.singular.assign(basis.size(), 0.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) r.singular[static_cast<std::size_t>(i)] = sv(i);
    const double s1 = r.singular.front();
    for (double s : r.singular)
        if (s > rank_tol * std::max(1.0, s1)) ++r.rank;
    if (r.rank > 0 && static_cast<std::size_t>(r.rank) < r.singular.size()) {
        const double floor = std::max(r.singular[static_cast<std::size_t>(r.rank)],
                                      std::numeric_limits<double>::epsilon() * s1);
        r.gap = r.singular[static_cast<std::size_t>(r.rank) - 1] / floor;
    } else {
        r.gap = std::numeric_limits<double>::infinity();
    }
    return r;
}

}  // namespace swq
