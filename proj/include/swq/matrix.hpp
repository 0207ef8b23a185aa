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

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace swq {

using Complex = std::complex<double>;

// Dense square complex matrix. Row-major semantic order; bipartite index
// (i, k) of H_A (x) H_B flattens to i * n_b + k (subsystem A major).
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Subsystem { A, B };

// Bipartite factorization N = n_a * n_b.
struct BipartiteDims {
    std::size_t n_a = 1;
    std::size_t n_b = 1;

    constexpr std::size_t total() const { return n_a * n_b; }
    constexpr std::size_t of(Subsystem s) const { return s == Subsystem::A ? n_a : n_b; }
    friend constexpr bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

inline std::size_t dim(const ComplexMatrix& x) { return static_cast<std::size_t>(x.rows()); }

inline void require_square(const ComplexMatrix& x, const char* what) {
    if (x.rows() != x.cols() || x.rows() < 1) {
        throw DimensionError(std::string(what) + ": matrix must be square with dim >= 1, got " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

inline ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

inline double frobenius(const ComplexMatrix& x) { return x.norm(); }

inline double hermitian_defect(const ComplexMatrix& x) { return (x - x.adjoint()).norm(); }

inline bool is_hermitian(const ComplexMatrix& x, double tol = kDefaultTol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_hermitian: tol must be positive");
    if (x.rows() != x.cols()) return false;
    return hermitian_defect(x) <= tol;
}

inline double unitarity_defect(const ComplexMatrix& u) {
    return (u * u.adjoint() - identity(dim(u))).norm();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kDefaultTol) {
    return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

// tr(x * y) without forming the product.
inline Complex trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
    return (x.transpose().array() * y.array()).sum();
}

inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y - y * x;
}

// Entry ((i*dim(b)+k), (j*dim(b)+l)) = a[i,j] * b[k,l].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    ComplexMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

// keep == A: result[i,j] = sum_k x[(i,k),(j,k)]  (traces out B)
// keep == B: result[k,l] = sum_i x[(i,k),(i,l)]  (traces out A)
inline ComplexMatrix partial_trace(const ComplexMatrix& x, BipartiteDims dims, Subsystem keep) {
    require_square(x, "partial_trace");
    if (dims.n_a < 1 || dims.n_b < 1 || dim(x) != dims.total()) {
        throw DimensionError("partial_trace: invalid bipartition " + std::to_string(dims.n_a) + "x" +
                             std::to_string(dims.n_b) + " for matrix of dim " + std::to_string(dim(x)));
    }
    const auto na = static_cast<Eigen::Index>(dims.n_a);
    const auto nb = static_cast<Eigen::Index>(dims.n_b);
    if (keep == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(na, na);
        for (Eigen::Index i = 0; i < na; ++i)
            for (Eigen::Index j = 0; j < na; ++j)
                out(i, j) = x.block(i * nb, j * nb, nb, nb).trace();
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(nb, nb);
    for (Eigen::Index i = 0; i < na; ++i) out += x.block(i * nb, i * nb, nb, nb);
    return out;
}

// Matrix exponential. Normal inputs (the anti-Hermitian generators used for
// group elements, and Hermitian ones) go through a unitary eigendecomposition
// so that exp of an anti-Hermitian matrix is unitary to rounding. Anything
// else falls back to Pade scaling-and-squaring.
inline ComplexMatrix mat_exp(const ComplexMatrix& x) {
    require_square(x, "mat_exp");
    const double scale = std::max(1.0, x.norm());
    ComplexMatrix out;
    if ((x + x.adjoint()).norm() <= 1e-14 * scale) {
        // x = i H, H Hermitian
        const ComplexMatrix h = Complex(0.0, -0.5) * (x - x.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
        if (es.info() != Eigen::Success) throw NumericalError("mat_exp: eigensolver failed");
        const Eigen::VectorXcd phases =
            es.eigenvalues().unaryExpr([](double l) { return std::exp(Complex(0.0, l)); });
        out = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    } else if ((x - x.adjoint()).norm() <= 1e-14 * scale) {
        const ComplexMatrix h = 0.5 * (x + x.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
        if (es.info() != Eigen::Success) throw NumericalError("mat_exp: eigensolver failed");
        const Eigen::VectorXd e = es.eigenvalues().array().exp();
        out = es.eigenvectors() * e.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    } else {
        out = x.exp();
    }
    if (!out.allFinite()) throw NumericalError("mat_exp: result is not finite");
    return out;
}

// Eigenvalues of a Hermitian matrix, descending.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& x) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    return es.eigenvalues().reverse();
}

// Validated state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kPsdTol = 1e-10;

    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
        require_square(mat_, "DensityMatrix");
        if (hermitian_defect(mat_) > kHermitianTol)
            throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
        if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > kTraceTol)
            throw std::invalid_argument("DensityMatrix: trace is not 1");
        if (hermitian_eigenvalues(mat_).minCoeff() < -kPsdTol)
            throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }

    static DensityMatrix maximally_mixed(std::size_t n) {
        return DensityMatrix(identity(n) / static_cast<double>(n));
    }

    const ComplexMatrix& mat() const { return mat_; }
    std::size_t dim() const { return swq::dim(mat_); }

  private:
    ComplexMatrix mat_;
};

inline DensityMatrix reduce_state(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep) {
    ComplexMatrix r = partial_trace(rho.mat(), dims, keep);
    // restore exact Hermiticity lost to summation order
    return DensityMatrix(0.5 * (r + r.adjoint()));
}

}  // namespace swq
