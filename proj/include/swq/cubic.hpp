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
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace swq {

// Coefficients c[0] + c[1] t + c[2] t^2 + c[3] t^3.
using Cubic = std::array<double, 4>;

inline double eval_cubic(const Cubic& c, double t) { return ((c[3] * t + c[2]) * t + c[1]) * t + c[0]; }

namespace detail {

inline double polish_root(const Cubic& c, double t) {
    for (int it = 0; it < 8; ++it) {
        const double f = eval_cubic(c, t);
        const double df = (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1];
        if (df == 0.0) break;
        const double step = f / df;
        const double next = t - step;
        if (std::abs(eval_cubic(c, next)) >= std::abs(f)) break;
        t = next;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    return t;
}

// Roots of a t^2 + b t + c with a != 0, cancellation-free.
inline std::array<std::complex<double>, 2> quadratic_roots(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) return {std::complex<double>(0.0), std::complex<double>(0.0)};
        return {std::complex<double>(q / a), std::complex<double>(c / q)};
    }
    const double re = -b / (2.0 * a), im = std::sqrt(-disc) / (2.0 * a);
    return {std::complex<double>(re, -std::abs(im)), std::complex<double>(re, std::abs(im))};
}

}  // namespace detail

// All roots of a polynomial of degree <= 3, sorted by (real, imag). A leading
// coefficient that is negligible relative to the others lowers the degree,
// so fewer roots are returned.
inline std::vector<std::complex<double>> solve_cubic(const Cubic& c, double rel_zero = 1e-14) {
    using C = std::complex<double>;
    const double scale = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
    std::vector<C> roots;
    if (scale == 0.0) return roots;
    auto negligible = [&](double v) { return std::abs(v) <= rel_zero * scale; };

    if (negligible(c[3])) {
        if (!negligible(c[2])) {
            const auto q = detail::quadratic_roots(c[2], c[1], c[0]);
            roots.assign(q.begin(), q.end());
        } else if (!negligible(c[1])) {
            roots.push_back(C(-c[0] / c[1]));
        }
    } else {
        const double a = c[2] / c[3], b = c[1] / c[3], d = c[0] / c[3];
        // t = y - a/3:  y^3 + p y + q = 0
        const double p = b - a * a / 3.0;
        const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
        const double disc = 0.25 * q * q + p * p * p / 27.0;
        double y;
        if (p == 0.0 && q == 0.0) {
            y = 0.0;
        } else if (disc > 0.0) {
            const double u = std::cbrt(-0.5 * q - std::copysign(std::sqrt(disc), q));
            y = u == 0.0 ? 0.0 : u - p / (3.0 * u);
        } else {
            // three real roots; take the one of largest magnitude for deflation
            const double r = 2.0 * std::sqrt(-p / 3.0);
            const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
            const double phi = std::acos(arg) / 3.0;
            y = r * std::cos(phi);
            for (int k = 1; k < 3; ++k) {
                const double yk = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
                if (std::abs(yk - a / 3.0) > std::abs(y - a / 3.0)) y = yk;
            }
        }
        const double t0 = detail::polish_root(c, y - a / 3.0);
        // deflate: t^3 + a t^2 + b t + d = (t - t0)(t^2 + e1 t + e0)
        const double e1 = a + t0;
        const double e0 = (std::abs(t0) > 1.0 && t0 != 0.0) ? -d / t0 : b + t0 * e1;
        const auto qr = detail::quadratic_roots(1.0, e1, e0);
        roots.push_back(C(t0));
        for (const auto& r : qr) roots.push_back(r.imag() == 0.0 ? C(detail::polish_root(c, r.real())) : r);
    }
    std::sort(roots.begin(), roots.end(), [](const C& x, const C& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return roots;
}

}  // namespace swq
