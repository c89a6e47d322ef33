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

// Closed-form predictions for Bell-diagonal states under local PDL.
//
// For a Bell-diagonal state with correlation T and concurrence c0, PDL
// elements (gamma_A, a) and (gamma_B, b) give
//
//   kappa = (T a) . b
//   C'    = c0 / (cosh gA cosh gB + kappa sinh gA sinh gB)
//   Gamma = e^-(gA + gB) (cosh gA cosh gB + kappa sinh gA sinh gB)
//
// so that Gamma C' = e^-(gA + gB) c0 for every orientation.

#include "pdlent/channels.hpp"
#include "pdlent/qmath.hpp"

namespace pdlent {

class KappaValue {
   public:
    /// Clamps to [-1, 1]; raw values further than 1e-9 outside throw DomainError.
    explicit KappaValue(double raw);
    double value() const { return value_; }

   private:
    double value_;
};

KappaValue kappa(const CorrelationT& t, const StokesVec& axis_a, const StokesVec& axis_b);

/// Bell-diagonal concurrence max(0, 2 w_max - 1).
double bell_diagonal_concurrence(const CorrelationT& t);

double predicted_concurrence(double c0, double gamma_a, double gamma_b, KappaValue k);

/// Post-selection rate of a Bell-diagonal state.
double predicted_rate(double gamma_a, double gamma_b, KappaValue k);

/// Gamma C' = e^-(gamma_a + gamma_b) c0.
double average_entanglement(double c0, double gamma_a, double gamma_b);

/// Element on B producing the same post-selected state as `on_a` does on A,
/// for a Bell state with correlation `t`: same magnitude, axis T a.
/// Throws UnsupportedStateError unless every |t_j| = 1.
PdlElement equivalence_map(const PdlElement& on_a, const CorrelationT& t);

struct CompensatorPlan {
    PdlElement element;
    double predicted_concurrence;
    double predicted_rate;
};

/// Best single PDL element on B against the aggregate `agg_a` on A. With
/// m = |T a| and u = T a / m the element has axis -u and
/// tanh gB = m tanh gA, giving C' = c0 / (cosh gA sqrt(1 - m^2 tanh^2 gA)).
/// Bell states (m = 1) are restored exactly. Throws DomainError when T
/// annihilates the axis (m < 1e-12) and gA > 0.
CompensatorPlan design_compensator(const PdlElement& agg_a, const CorrelationT& t);

struct RateBounds {
    double c_min;         ///< sech(gA + gB), kappa = +1
    double c_max_norm;    ///< sech(gA - gB), kappa = -1; 1 when gA = gB
    double rate_at_kappa_minus1;
    double rate_at_kappa_plus1;
};

/// Bell-state envelope, concurrences normalized to the zero-PDL value.
RateBounds rate_bounds(double gamma_a, double gamma_b);

/// gamma = arccosh(c0 / c_meas). Throws DomainError if c_meas <= 0 or
/// c_meas > c0 beyond 1e-9.
double estimate_gamma_from_concurrence(double c0, double c_meas);

}  // namespace pdlent
