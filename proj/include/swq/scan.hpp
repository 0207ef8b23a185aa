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
#include <vector>

#include "swq/composite.hpp"
#include "swq/quadrics.hpp"
#include "swq/random.hpp"

namespace swq {

struct ScanConfig {
    std::size_t n = 1;
    Seed seed = kDefaultSeed;
    double lo = -std::numbers::pi;  // box for every a and a' parameter
    double hi = std::numbers::pi;
    bool zero_params = false;
    double level = kPrintedQuadricLevel;
};

struct ScanRecord {
    std::size_t index = 0;
    Vec3 a{};
    Vec3 a_prime{};
    QuadricTriple quadrics;
    RootReport roots;
    std::vector<Eigen::Vector3d> solutions;
};

inline ScanRecord scan_record(std::size_t index, const Vec3& a, const Vec3& ap, const FeasibilityOptions& opt,
                              const LambdaBasis& b) {
    ScanRecord rec;
    rec.index = index;
    rec.a = a;
    rec.a_prime = ap;
    rec.quadrics = ellipsoid_matrices_for(a, ap, b);
    rec.roots = char_cubic_roots(rec.quadrics);
    rec.solutions = moduli_feasibility(rec.quadrics, opt).solutions;
    return rec;
}

// One record per draw; record i draws its parameters from
// child_seed(seed, i), so the output is independent of evaluation order.
inline std::vector<ScanRecord> moduli_scan(const ScanConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("moduli_scan: n must be >= 1");
    if (!(cfg.lo <= cfg.hi)) throw std::invalid_argument("moduli_scan: empty parameter range");
    const LambdaBasis b;
    FeasibilityOptions opt;
    opt.level = cfg.level;
    std::vector<ScanRecord> out;
    out.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        Vec3 a{}, ap{};
        if (!cfg.zero_params) {
            Rng rng = make_rng(child_seed(cfg.seed, i));
            std::uniform_real_distribution<double> u(cfg.lo, cfg.hi);
            for (auto& x : a) x = u(rng);
            for (auto& x : ap) x = u(rng);
        }
        out.push_back(scan_record(i, a, ap, opt, b));
    }
    return out;
}

// The bundle keeps only the A factor of g = K A T. This measures how much
// the composite residuals of g D0(mu) g^dagger move when K or T is switched
// on at fixed A and mu.
struct KtDependence {
    double max_shift_k = 0.0;  // max change of the reduced purities with random K, T = I
    double max_shift_t = 0.0;  // same with random T, K = I
};

inline KtDependence kt_dependence(const Vec3& a, const Vec3& ap, const Eigen::Vector3d& mu, std::size_t trials,
                                  Seed seed) {
    const LambdaBasis b;
    const ComplexMatrix af = a_factor(b, a, ap);
    auto purities = [&](const ComplexMatrix& g) {
        const SWKernel d = kernel_from_moduli(g, mu);
        return std::array<double, 2>{reduced_purity(d.mat(), {2, 2}, Subsystem::A),
                                     reduced_purity(d.mat(), {2, 2}, Subsystem::B)};
    };
    const auto base = purities(af);
    KtDependence out;
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (std::size_t t = 0; t < trials; ++t) {
        Vec6 kp{};
        Vec3 tp{};
        for (auto& x : kp) x = u(rng);
        for (auto& x : tp) x = u(rng);
        const KakElement gk = kak_element(kp, a, ap, Vec3{}, b);
        const KakElement gt = kak_element(Vec6{}, a, ap, tp, b);
        const auto rk = purities(gk.group_element());
        const auto rt = purities(gt.group_element());
        out.max_shift_k = std::max({out.max_shift_k, std::abs(rk[0] - base[0]), std::abs(rk[1] - base[1])});
        out.max_shift_t = std::max({out.max_shift_t, std::abs(rt[0] - base[0]), std::abs(rt[1] - base[1])});
    }
    return out;
}

}  // namespace swq
