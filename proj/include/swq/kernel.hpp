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

// Stratonovich-Weyl kernels of an elementary N-level system.
//
// A kernel is a Hermitian N x N matrix with tr D = 1 and tr D^2 = N. Every
// such matrix is a unitary conjugate of diag(pi) for a spectrum pi lying on
// the sphere of radius sqrt(N - 1/N) about (1/N, ..., 1/N) in the trace-one
// hyperplane, so kernels are parametrized by (spectrum, unitary).
//
// Phase-space integrals are taken over the Haar measure of U(N) with total
// mass N, i.e.  int dOmega f(Omega) := N * E_U[f(U D0 U^dagger)].  With that
// normalization  int dOmega D = I  and  int dOmega W_rho = tr rho.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "swq/matrix.hpp"
#include "swq/random.hpp"

namespace swq {

// Ordered (descending) eigenvalues of a kernel.
class KernelSpectrum {
  public:
    static constexpr double kTol = 1e-12;

    explicit KernelSpectrum(std::vector<double> values) : pi_(std::move(values)) {
        if (pi_.size() < 2) throw std::invalid_argument("KernelSpectrum: need at least 2 values");
        std::stable_sort(pi_.begin(), pi_.end(), std::greater<>());
        if (std::abs(trace_residual()) > kTol)
            throw std::invalid_argument("KernelSpectrum: sum of eigenvalues must be 1");
        if (std::abs(purity_residual()) > kTol)
            throw std::invalid_argument("KernelSpectrum: sum of squared eigenvalues must be N");
    }

    // Bypasses the moment checks. For perturbation experiments only.
    static KernelSpectrum unchecked(std::vector<double> values) {
        KernelSpectrum s;
        s.pi_ = std::move(values);
        std::stable_sort(s.pi_.begin(), s.pi_.end(), std::greater<>());
        return s;
    }

    std::size_t n() const { return pi_.size(); }
    const std::vector<double>& values() const { return pi_; }
    double operator[](std::size_t i) const { return pi_[i]; }

    double first_moment() const {
        double s = 0.0;
        for (double p : pi_) s += p;
        return s;
    }
    double second_moment() const {
        double s = 0.0;
        for (double p : pi_) s += p * p;
        return s;
    }
    double trace_residual() const { return first_moment() - 1.0; }
    double purity_residual() const { return second_moment() - static_cast<double>(n()); }

    RealVector as_vector() const { return Eigen::Map<const RealVector>(pi_.data(), static_cast<Eigen::Index>(n())); }

    // Euclidean norm of pi - (1/N)(1,...,1); sqrt(N - 1/N) for a valid kernel.
    double traceless_norm() const {
        const double c = 1.0 / static_cast<double>(n());
        double s = 0.0;
        for (double p : pi_) s += (p - c) * (p - c);
        return std::sqrt(s);
    }

    // Unit (N-1)-vector of the traceless part in the Helmert frame, i.e. the
    // point on the unit sphere S_{N-2}(1).
    RealVector unit_direction() const;

    ComplexMatrix diagonal() const { return as_vector().cast<Complex>().asDiagonal(); }

  private:
    KernelSpectrum() = default;
    std::vector<double> pi_;
};

// Orthonormal frame of the trace-zero hyperplane of R^n (Helmert basis).
// Column k-1 is (1, ..., 1, -k, 0, ..., 0) / sqrt(k (k + 1)), k = 1 .. n-1.
inline RealMatrix helmert_frame(std::size_t n) {
    const auto m = static_cast<Eigen::Index>(n);
    RealMatrix f = RealMatrix::Zero(m, m - 1);
    for (Eigen::Index k = 1; k < m; ++k) {
        const double s = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
        for (Eigen::Index i = 0; i < k; ++i) f(i, k - 1) = s;
        f(k, k - 1) = -static_cast<double>(k) * s;
    }
    return f;
}

inline RealVector KernelSpectrum::unit_direction() const {
    const RealVector centered = as_vector().array() - 1.0 / static_cast<double>(n());
    const RealVector coords = helmert_frame(n()).transpose() * centered;
    const double r = coords.norm();
    return r > 0.0 ? RealVector(coords / r) : coords;
}

namespace selector {
// Traceless part along the balanced axis: the first floor(N/2) entries
// positive, the rest negative. N = 2 gives (1, -1); N = 4 gives the sigma_30
// pattern (1, 1, -1, -1).
struct Canonical {};
// Uniform on the solution sphere.
struct Random {
    Seed seed;
};
// Unit (N-1)-vector mapped through the Helmert frame.
struct FromUnitVector {
    RealVector v;
};
}  // namespace selector

using SpectrumSelector = std::variant<selector::Canonical, selector::Random, selector::FromUnitVector>;

inline KernelSpectrum spectrum_from_direction(std::size_t n, const RealVector& traceless_unit) {
    const double radius = std::sqrt(static_cast<double>(n) - 1.0 / static_cast<double>(n));
    const RealVector pi = RealVector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)) +
                          radius * traceless_unit;
    return KernelSpectrum(std::vector<double>(pi.data(), pi.data() + pi.size()));
}

inline KernelSpectrum solve_kernel_spectrum(std::size_t n, const SpectrumSelector& sel = selector::Canonical{}) {
    if (n < 2) throw std::invalid_argument("solve_kernel_spectrum: n must be >= 2");
    const RealMatrix frame = helmert_frame(n);
    const auto m = static_cast<Eigen::Index>(n);
    RealVector dir;
    if (std::holds_alternative<selector::Canonical>(sel)) {
        RealVector axis(m);
        for (Eigen::Index i = 0; i < m; ++i) axis(i) = (i < m / 2) ? 1.0 : -1.0;
        axis.array() -= axis.mean();
        dir = axis / axis.norm();
    } else if (const auto* r = std::get_if<selector::Random>(&sel)) {
        Rng rng = make_rng(r->seed);
        RealVector g(m - 1);
        do {
            for (Eigen::Index i = 0; i < m - 1; ++i) g(i) = std_normal(rng);
        } while (g.norm() == 0.0);
        dir = frame * (g / g.norm());
    } else {
        const auto& v = std::get<selector::FromUnitVector>(sel).v;
        if (v.size() != m - 1)
            throw DimensionError("solve_kernel_spectrum: unit vector must have n - 1 components");
        if (std::abs(v.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("solve_kernel_spectrum: vector is not a unit vector");
        dir = frame * v;
    }
    return spectrum_from_direction(n, dir);
}

// Hermitian, unit trace, tr D^2 = N.
class SWKernel {
  public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kPurityTol = 1e-10;

    explicit SWKernel(ComplexMatrix m) : mat_(std::move(m)) {
        require_square(mat_, "SWKernel");
        const double n = static_cast<double>(dim(mat_));
        if (hermitian_defect(mat_) > kHermitianTol) throw std::invalid_argument("SWKernel: matrix is not Hermitian");
        if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > kTraceTol)
            throw std::invalid_argument("SWKernel: trace is not 1");
        if (std::abs(trace_product(mat_, mat_).real() - n) > kPurityTol)
            throw std::invalid_argument("SWKernel: tr(D^2) differs from N");
    }

    const ComplexMatrix& mat() const { return mat_; }
    std::size_t n() const { return dim(mat_); }

    KernelSpectrum spectrum() const {
        const RealVector ev = hermitian_eigenvalues(mat_);
        return KernelSpectrum::unchecked(std::vector<double>(ev.data(), ev.data() + ev.size()));
    }

  private:
    ComplexMatrix mat_;
};

inline ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& x) { return u * x * u.adjoint(); }

inline ComplexMatrix hermitian_part(const ComplexMatrix& x) { return 0.5 * (x + x.adjoint()); }

// u diag(pi) u^dagger.
inline SWKernel kernel_from_spectrum(const KernelSpectrum& spec, const ComplexMatrix& u) {
    require_square(u, "kernel_from_spectrum");
    if (dim(u) != spec.n()) throw DimensionError("kernel_from_spectrum: unitary dimension does not match spectrum");
    if (unitarity_defect(u) > kDefaultTol) throw std::invalid_argument("kernel_from_spectrum: u is not unitary");
    return SWKernel(hermitian_part(conjugate_by(u, spec.diagonal())));
}

struct WignerValue {
    double w = 0.0;
    double imag = 0.0;  // discarded imaginary part of tr(rho D)
};

inline WignerValue wigner_value(const ComplexMatrix& rho, const ComplexMatrix& delta) {
    if (rho.rows() != delta.rows() || rho.cols() != delta.cols())
        throw DimensionError("wigner_value: state and kernel dimensions differ");
    const Complex t = trace_product(rho, delta);
    return {t.real(), t.imag()};
}

inline WignerValue wigner_value(const DensityMatrix& rho, const SWKernel& delta) {
    return wigner_value(rho.mat(), delta.mat());
}

// Coefficients (alpha, beta) of the Haar twirl
//   E_U[(U D U^dag) tr(X U D U^dag)] = alpha X + beta tr(X) I
// for a Hermitian D with moments t1 = tr D, t2 = tr D^2.
struct TwirlCoefficients {
    double alpha;
    double beta;
};

inline TwirlCoefficients twirl_coefficients(std::size_t n, double t1, double t2) {
    const double nn = static_cast<double>(n);
    const double denom = nn * (nn * nn - 1.0);
    return {(nn * t2 - t1 * t1) / denom, (nn * t1 * t1 - t2) / denom};
}

// Closed-form orbit integral  int dOmega D(Omega) tr(X D(Omega)).
inline ComplexMatrix reconstruct_exact(const ComplexMatrix& x, const KernelSpectrum& spec) {
    require_square(x, "reconstruct_exact");
    if (dim(x) != spec.n()) throw DimensionError("reconstruct_exact: dimension mismatch");
    const std::size_t n = spec.n();
    const auto [alpha, beta] = twirl_coefficients(n, spec.first_moment(), spec.second_moment());
    const double nn = static_cast<double>(n);
    return nn * (alpha * x + beta * x.trace() * identity(n));
}

inline ComplexMatrix reconstruct_exact(const DensityMatrix& rho, const KernelSpectrum& spec) {
    return reconstruct_exact(rho.mat(), spec);
}

namespace detail {

inline constexpr std::size_t kMcChunk = 4096;

// Visits D_k = U_k diag(pi) U_k^dagger for Haar U_k. Chunk c of the sample
// stream draws from child_seed(seed, c) so the stream does not depend on how
// chunks are scheduled.
template <class Visit>
void for_each_orbit_sample(const KernelSpectrum& spec, std::size_t samples, Seed seed, Visit&& visit) {
    const std::size_t n = spec.n();
    const ComplexMatrix d0 = spec.diagonal();
    for (std::size_t start = 0, chunk = 0; start < samples; start += kMcChunk, ++chunk) {
        Rng rng = make_rng(child_seed(seed, chunk));
        const std::size_t stop = std::min(samples, start + kMcChunk);
        for (std::size_t k = start; k < stop; ++k) {
            const ComplexMatrix u = haar_unitary(n, rng);
            visit(conjugate_by(u, d0));
        }
    }
}

}  // namespace detail

// Monte-Carlo estimate of  int dOmega D(Omega) W_rho(Omega).
inline ComplexMatrix reconstruct_mc(const DensityMatrix& rho, const KernelSpectrum& spec, std::size_t samples,
                                    Seed seed) {
    if (samples < 1) throw std::invalid_argument("reconstruct_mc: samples must be >= 1");
    if (rho.dim() != spec.n()) throw DimensionError("reconstruct_mc: dimension mismatch");
    ComplexMatrix acc = ComplexMatrix::Zero(rho.mat().rows(), rho.mat().cols());
    detail::for_each_orbit_sample(spec, samples, seed, [&](const ComplexMatrix& d) {
        acc += trace_product(rho.mat(), d).real() * d;
    });
    return (static_cast<double>(spec.n()) / static_cast<double>(samples)) * acc;
}

// Monte-Carlo estimate of  int dOmega W_rho(Omega); equals tr rho.
inline double integrate_wigner_mc(const DensityMatrix& rho, const KernelSpectrum& spec, std::size_t samples,
                                  Seed seed) {
    if (samples < 1) throw std::invalid_argument("integrate_wigner_mc: samples must be >= 1");
    if (rho.dim() != spec.n()) throw DimensionError("integrate_wigner_mc: dimension mismatch");
    double acc = 0.0, comp = 0.0;  // Kahan
    detail::for_each_orbit_sample(spec, samples, seed, [&](const ComplexMatrix& d) {
        const double y = trace_product(rho.mat(), d).real() - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    });
    return static_cast<double>(spec.n()) * acc / static_cast<double>(samples);
}

struct MasterReport {
    bool hermitian = false;
    double hermitian_defect = 0.0;
    double trace_residual = 0.0;   // |tr X - 1|
    double purity_residual = 0.0;  // |tr X^2 - N|

    bool admissible(double tol) const {
        return hermitian_defect <= tol && trace_residual <= tol && purity_residual <= tol;
    }
};

inline MasterReport verify_master(const ComplexMatrix& x, std::size_t n, double tol = kDefaultTol) {
    require_square(x, "verify_master");
    if (dim(x) != n) throw DimensionError("verify_master: dim(x) != n");
    MasterReport r;
    r.hermitian_defect = hermitian_defect(x);
    r.hermitian = r.hermitian_defect <= tol;
    r.trace_residual = std::abs(x.trace() - Complex(1.0, 0.0));
    r.purity_residual = std::abs(trace_product(x, x).real() - static_cast<double>(n));
    return r;
}

// |tr(rho U D U^dag) - tr(U^dag rho U D)|; an executable witness of unitary
// covariance on the orbit.
inline double covariance_check(const SWKernel& delta, const DensityMatrix& rho, const ComplexMatrix& u) {
    if (delta.n() != rho.dim() || dim(u) != delta.n()) throw DimensionError("covariance_check: dimension mismatch");
    if (unitarity_defect(u) > kDefaultTol) throw std::invalid_argument("covariance_check: u is not unitary");
    const Complex lhs = trace_product(rho.mat(), conjugate_by(u, delta.mat()));
    const Complex rhs = trace_product(u.adjoint() * rho.mat() * u, delta.mat());
    return std::abs(lhs - rhs);
}

}  // namespace swq
