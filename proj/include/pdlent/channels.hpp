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

// Polarization dependent loss (PDL) and first-order PMD channel elements.
//
// PDL magnitudes are in nepers of amplitude: an element of magnitude gamma
// transmits its best mode with amplitude 1 and the orthogonal mode with
// e^-gamma. Power extinction in dB is gamma * 20 log10(e).

#include <optional>
#include <vector>

#include "pdlent/qmath.hpp"

namespace pdlent {

/// Stokes-space vector, components ordered (sigma_1, sigma_2, sigma_3).
struct StokesVec {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 1.0;

    double operator[](int j) const { return j == 1 ? s1 : j == 2 ? s2 : s3; }
    double norm() const;
    double dot(const StokesVec& o) const { return s1 * o.s1 + s2 * o.s2 + s3 * o.s3; }
    /// Throws DomainError on a zero vector.
    StokesVec normalized() const;
    StokesVec operator-() const { return {-s1, -s2, -s3}; }
    StokesVec operator*(double k) const { return {k * s1, k * s2, k * s3}; }

    /// Unit vector at polar angle `polar` from +s3 and azimuth `azimuth` in
    /// the s1-s2 plane.
    static StokesVec from_angles(double polar, double azimuth);
    double polar() const;
    double azimuth() const;
};

/// Stokes image of a Jones vector, s_j = v^dagger sigma_j v / |v|^2.
StokesVec stokes_of(const Vec2& jones);
/// A unit Jones vector whose Stokes image is `axis` (global phase arbitrary).
Vec2 jones_of(const StokesVec& axis);

/// `n` near-uniform unit vectors on the sphere (Fibonacci lattice).
std::vector<StokesVec> fibonacci_sphere(int n);

/// PDL element: magnitude gamma >= 0 (nepers) and unit axis of maximum
/// transmission. A zero-magnitude element always carries the axis (0, 0, 1).
class PdlElement {
   public:
    PdlElement() = default;
    PdlElement(double gamma, const StokesVec& axis);
    static PdlElement from_db(double db, const StokesVec& axis);

    double gamma() const { return gamma_; }
    double db() const;
    const StokesVec& axis() const { return axis_; }
    bool is_zero() const { return gamma_ == 0.0; }

   private:
    double gamma_ = 0.0;
    StokesVec axis_{};
};

/// First-order PMD reduced to dephasing about `axis` with mixing weight q.
class PmdElement {
   public:
    PmdElement(double q, const StokesVec& axis, std::optional<double> tau_ps = std::nullopt);

    double q() const { return q_; }
    const StokesVec& axis() const { return axis_; }
    std::optional<double> tau_ps() const { return tau_ps_; }

   private:
    double q_;
    StokesVec axis_;
    std::optional<double> tau_ps_;
};

/// Normalized post-selected state and the coincidence transmission rate.
struct ChannelOutcome {
    DensityMatrix4 rho;
    double rate;
};

double gamma_from_db(double db);
double db_from_gamma(double gamma);

/// e^{-gamma/2} (cosh(gamma/2) I + sinh(gamma/2) axis.sigma).
Mat2 pdl_operator(const PdlElement& e);

/// (a (x) b) rho (a (x) b)^dagger, renormalized. Operators must be
/// trace-nonincreasing (largest singular value <= 1). Throws ExtinctionError
/// if the surviving weight is below 1e-12.
ChannelOutcome apply_local(const DensityMatrix4& rho, const Mat2& a, const Mat2& b);

/// (1 - q) rho + q K rho K with K = axis.sigma acting on `which`.
DensityMatrix4 pmd_dephase(const DensityMatrix4& rho, const PmdElement& e, Qubit which);

/// Mixing weight of a DGD tau (ps) for a Gaussian spectrum of RMS angular
/// width sigma_omega (rad/s): q = (1 - exp(-sigma_omega^2 tau^2 / 2)) / 2.
double dephasing_from_dgd(double tau_ps, double sigma_omega);

/// Aggregate of `first` followed by `second` on the same photon. The
/// magnitude is ln(s_max / s_min) of P(second) P(first); the axis is the
/// Stokes image of the input-side principal singular vector.
PdlElement concat_pdl(const PdlElement& first, const PdlElement& second);

/// Angle between the two axes of a concatenation, recovered from the
/// magnitudes alone via
///   cosh g_tot = cosh g1 cosh g2 + cos(theta) sinh g1 sinh g2.
double angle_from_aggregate(double gamma_tot, double gamma_1, double gamma_2);

/// One fiber channel: optional PMD dephasing followed by a PDL element.
struct ChannelSpec {
    PdlElement pdl{};
    std::optional<PmdElement> pmd{};
};

ChannelOutcome apply_channels(const DensityMatrix4& rho, const ChannelSpec& a, const ChannelSpec& b);

}  // namespace pdlent
