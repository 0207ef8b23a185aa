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

#include <array>

#include "swq/matrix.hpp"

namespace swq {

// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
inline ComplexMatrix pauli(int mu) {
    ComplexMatrix s(2, 2);
    switch (mu) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::out_of_range("pauli: index must be in 0..3");
    }
    return s;
}

// Fano basis element sigma_{mu nu} = sigma_mu (x) sigma_nu.
inline ComplexMatrix sigma(int mu, int nu) { return kron(pauli(mu), pauli(nu)); }

// Raw Pauli coefficient: x = sum_{mu nu} c_{mu nu} sigma_{mu nu}, c = tr(x sigma_{mu nu}) / 4.
inline double pauli_coefficient(const ComplexMatrix& x, int mu, int nu) {
    return trace_product(x, sigma(mu, nu)).real() / 4.0;
}

}  // namespace swq
