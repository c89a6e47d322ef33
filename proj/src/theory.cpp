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

#include "pdlent/theory.hpp"

#include <algorithm>
#include <cmath>

#include "pdlent/errors.hpp"

namespace pdlent {

KappaValue::KappaValue(double raw) {
    if (!std::isfinite(raw) || std::abs(raw) > 1.0 + 1e-9) throw DomainError("kappa outside [-1, 1]");
    value_ = std::clamp(raw, -1.0, 1.0);
}

KappaValue kappa(const CorrelationT& t, const StokesVec& axis_a, const StokesVec& axis_b) {
    double k = 0.0;
    for (int j = 1; j <= 3; ++j) k += axis_a[j] * axis_b[j] * t.t(j);
    return KappaValue(k);
}

double bell_diagonal_concurrence(const CorrelationT& t) {
    const auto w = bell_weights(t);
    return std::max(0.0, 2.0 * *std::max_element(w.begin(), w.end()) - 1.0);
}

double predicted_concurrence(double c0, double gamma_a, double gamma_b, KappaValue k) {
    const double denom = std::cosh(gamma_a) * std::cosh(gamma_b) + k.value() * std::sinh(gamma_a) * std::sinh(gamma_b);
    return c0 / denom;
}

double predicted_rate(double gamma_a, double gamma_b, KappaValue k) {
    return std::exp(-(gamma_a + gamma_b)) *
           (std::cosh(gamma_a) * std::cosh(gamma_b) + k.value() * std::sinh(gamma_a) * std::sinh(gamma_b));
}

double average_entanglement(double c0, double gamma_a, double gamma_b) {
    return std::exp(-(gamma_a + gamma_b)) * c0;
}

PdlElement equivalence_map(const PdlElement& on_a, const CorrelationT& t) {
    if (!t.is_bell()) throw UnsupportedStateError("equivalence_map: defined for Bell states only (|t_j| = 1)");
    if (on_a.is_zero()) return {};
    const StokesVec& a = on_a.axis();
    return {on_a.gamma(), StokesVec{t.t1() * a.s1, t.t2() * a.s2, t.t3() * a.s3}.normalized()};
}

CompensatorPlan design_compensator(const PdlElement& agg_a, const CorrelationT& t) {
    const double c0 = bell_diagonal_concurrence(t);
    if (agg_a.is_zero()) return {PdlElement{}, c0, 1.0};
    const StokesVec& a = agg_a.axis();
    const StokesVec ta{t.t1() * a.s1, t.t2() * a.s2, t.t3() * a.s3};
    const double m = ta.norm();
    if (m < 1e-12) throw DomainError("design_compensator: correlation annihilates the PDL axis");
    const double ga = agg_a.gamma();
    const double gb = std::atanh(std::min(1.0, m) * std::tanh(ga));
    const PdlElement element(gb, -ta.normalized());
    const KappaValue k(-std::min(1.0, m));
    return {element, predicted_concurrence(c0, ga, gb, k), predicted_rate(ga, gb, k)};
}

RateBounds rate_bounds(double gamma_a, double gamma_b) {
    if (!(gamma_a >= 0.0) || !(gamma_b >= 0.0)) throw DomainError("rate_bounds: magnitudes must be >= 0");
    const double s = gamma_a + gamma_b;
    return {1.0 / std::cosh(s), 1.0 / std::cosh(gamma_a - gamma_b),
            0.5 * (std::exp(-2 * gamma_a) + std::exp(-2 * gamma_b)), 0.5 * (1.0 + std::exp(-2 * s))};
}

double estimate_gamma_from_concurrence(double c0, double c_meas) {
    if (!(c_meas > 0.0)) throw DomainError("estimate_gamma_from_concurrence: measured concurrence must be > 0");
    if (c_meas > c0 + 1e-9) throw DomainError("estimate_gamma_from_concurrence: measured concurrence exceeds baseline");
    return std::acosh(std::max(1.0, c0 / c_meas));
}

}  // namespace pdlent
