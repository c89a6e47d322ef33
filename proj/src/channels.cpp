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

#include "pdlent/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdlent/errors.hpp"

namespace pdlent {
namespace {

const double kDbPerNeper = 20.0 * std::log10(std::numbers::e);

Mat2 axis_sigma(const StokesVec& a) { return a.s1 * pauli(1) + a.s2 * pauli(2) + a.s3 * pauli(3); }

StokesVec checked_unit(const StokesVec& axis, const char* what) {
    if (std::abs(axis.norm() - 1.0) > 1e-9) throw DomainError(std::string(what) + ": axis is not a unit vector");
    return axis.normalized();
}

}  // namespace

double StokesVec::norm() const { return std::sqrt(dot(*this)); }

StokesVec StokesVec::normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("StokesVec: cannot normalize a zero vector");
    return {s1 / n, s2 / n, s3 / n};
}

StokesVec StokesVec::from_angles(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

double StokesVec::polar() const { return std::acos(std::clamp(s3 / norm(), -1.0, 1.0)); }

double StokesVec::azimuth() const { return std::atan2(s2, s1); }

StokesVec stokes_of(const Vec2& jones) {
    const double n2 = jones.squaredNorm();
    if (!(n2 > 0.0)) throw DomainError("stokes_of: zero Jones vector");
    auto comp = [&](int j) { return (jones.adjoint() * pauli(j) * jones)(0, 0).real() / n2; };
    return {comp(1), comp(2), comp(3)};
}

Vec2 jones_of(const StokesVec& axis) {
    const StokesVec u = axis.normalized();
    const double polar = u.polar();
    Vec2 v;
    v << std::cos(polar / 2), std::polar(std::sin(polar / 2), u.azimuth());
    return v;
}

std::vector<StokesVec> fibonacci_sphere(int n) {
    if (n < 1) throw DomainError("fibonacci_sphere: need at least one point");
    std::vector<StokesVec> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        pts.push_back(StokesVec{r * std::cos(phi), r * std::sin(phi), z}.normalized());
    }
    return pts;
}

PdlElement::PdlElement(double gamma, const StokesVec& axis) : gamma_(gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0) throw DomainError("PdlElement: magnitude must be >= 0");
    axis_ = gamma == 0.0 ? StokesVec{} : checked_unit(axis, "PdlElement");
}

PdlElement PdlElement::from_db(double db, const StokesVec& axis) { return {gamma_from_db(db), axis}; }

double PdlElement::db() const { return db_from_gamma(gamma_); }

PmdElement::PmdElement(double q, const StokesVec& axis, std::optional<double> tau_ps)
    : q_(q), axis_(checked_unit(axis, "PmdElement")), tau_ps_(tau_ps) {
    if (!(q >= 0.0 && q <= 0.5)) throw DomainError("PmdElement: dephasing weight must lie in [0, 0.5]");
    if (tau_ps && !(*tau_ps >= 0.0)) throw DomainError("PmdElement: DGD must be >= 0");
}

double gamma_from_db(double db) {
    if (!(db >= 0.0)) throw DomainError("gamma_from_db: PDL in dB must be >= 0");
    return db / kDbPerNeper;
}

double db_from_gamma(double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("db_from_gamma: magnitude must be >= 0");
    return gamma * kDbPerNeper;
}

Mat2 pdl_operator(const PdlElement& e) {
    const double g = e.gamma();
    return std::exp(-g / 2) * (std::cosh(g / 2) * pauli(0) + std::sinh(g / 2) * axis_sigma(e.axis()));
}

ChannelOutcome apply_local(const DensityMatrix4& rho, const Mat2& a, const Mat2& b) {
    for (const Mat2* m : {&a, &b}) {
        Eigen::JacobiSVD<Mat2> svd(*m);
        if (svd.singularValues()(0) > 1.0 + 1e-12) {
            throw DomainError("apply_local: filter operator amplifies (singular value > 1)");
        }
    }
    const Mat4 k = kron(a, b);
    const Mat4 out = k * rho.mat() * k.adjoint();
    const double rate = out.trace().real();
    if (!(rate >= 1e-12)) throw ExtinctionError("apply_local: complete extinction, nothing to post-select");
    return {DensityMatrix4::from_matrix(out / rate), rate};
}

DensityMatrix4 pmd_dephase(const DensityMatrix4& rho, const PmdElement& e, Qubit which) {
    const Mat2 s = axis_sigma(e.axis());
    const Mat4 k = which == Qubit::A ? kron(s, pauli(0)) : kron(pauli(0), s);
    return DensityMatrix4::from_matrix((1.0 - e.q()) * rho.mat() + e.q() * (k * rho.mat() * k.adjoint()));
}

double dephasing_from_dgd(double tau_ps, double sigma_omega) {
    if (!(tau_ps >= 0.0) || !(sigma_omega >= 0.0)) throw DomainError("dephasing_from_dgd: inputs must be >= 0");
    const double x = sigma_omega * tau_ps * 1e-12;
    return 0.5 * (1.0 - std::exp(-0.5 * x * x));
}

PdlElement concat_pdl(const PdlElement& first, const PdlElement& second) {
    const Mat2 m = pdl_operator(second) * pdl_operator(first);
    Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double gamma = std::log(s(0) / s(1));
    if (!(gamma >= 1e-12)) return {};
    return {gamma, stokes_of(svd.matrixV().col(0)).normalized()};
}

double angle_from_aggregate(double gamma_tot, double gamma_1, double gamma_2) {
    if (gamma_1 < 1e-12 || gamma_2 < 1e-12) {
        throw DomainError("angle_from_aggregate: angle undefined for a zero-magnitude element");
    }
    const double lo = std::abs(gamma_1 - gamma_2), hi = gamma_1 + gamma_2;
    if (gamma_tot < lo - 1e-9 || gamma_tot > hi + 1e-9) {
        throw DomainError("angle_from_aggregate: aggregate magnitude outside the concatenation range");
    }
    const double g = std::clamp(gamma_tot, lo, hi);
    const double c = (std::cosh(g) - std::cosh(gamma_1) * std::cosh(gamma_2)) /
                     (std::sinh(gamma_1) * std::sinh(gamma_2));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

ChannelOutcome apply_channels(const DensityMatrix4& rho, const ChannelSpec& a, const ChannelSpec& b) {
    DensityMatrix4 r = rho;
    if (a.pmd) r = pmd_dephase(r, *a.pmd, Qubit::A);
    if (b.pmd) r = pmd_dephase(r, *b.pmd, Qubit::B);
    return apply_local(r, pdl_operator(a.pdl), pdl_operator(b.pdl));
}

}  // namespace pdlent
