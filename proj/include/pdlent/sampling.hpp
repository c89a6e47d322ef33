// Copyright 2026 The pdlent Authors
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

// Random draws of states and PDL elements for property checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "pdlent/channels.hpp"
#include "pdlent/errors.hpp"
#include "pdlent/qmath.hpp"

namespace pdlent {

using Rng = std::mt19937_64;

inline StokesVec random_unit_axis(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const StokesVec v{n(rng), n(rng), n(rng)};
        if (v.norm() > 1e-6) return v.normalized();
    }
}

/// Bell weights (Phi+, Phi-, Psi+, Psi-) -> correlation triple.
inline CorrelationT correlation_from_weights(const std::array<double, 4>& w) {
    return CorrelationT(w[0] - w[1] + w[2] - w[3], -w[0] + w[1] + w[2] - w[3], w[0] + w[1] - w[2] - w[3]);
}

/// Half of the draws have one dominant weight in [1/2, 1] (entangled), the
/// rest are flat Dirichlet draws (mostly separable).
inline CorrelationT random_bell_diagonal(Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, 4> w{e(rng), e(rng), e(rng), e(rng)};
    double sum = w[0] + w[1] + w[2] + w[3];
    for (double& x : w) x /= sum;
    if (u(rng) < 0.5) {
        const double dominant = 0.5 + 0.5 * u(rng);
        const auto k = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 3)(rng));
        const double rest = w[0] + w[1] + w[2] + w[3] - w[k];
        for (std::size_t j = 0; j < 4; ++j) w[j] = j == k ? dominant : w[j] * (1.0 - dominant) / rest;
    }
    return correlation_from_weights(w);
}

/// Random PDL element with magnitude uniform in [0, max_db] dB.
inline PdlElement random_pdl(Rng& rng, double max_db) {
    std::uniform_real_distribution<double> u(0.0, max_db);
    return PdlElement::from_db(u(rng), random_unit_axis(rng));
}

/// Random full-rank mixed state from a Ginibre matrix, G G^dagger / Tr.
inline DensityMatrix4 random_density_matrix(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat4 g;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
    }
    Mat4 rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix4::from_matrix(rho);
}

inline Vec4 random_pure_vector(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = Complex(n(rng), n(rng));
    return v.normalized();
}

}  // namespace pdlent
