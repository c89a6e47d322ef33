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

#include "pdlent/instrument.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "pdlent/errors.hpp"

namespace pdlent {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Analyzer {
    const char* name;
    Vec2 jones;
};

std::array<Analyzer, 6> analyzers() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    return {{{"H", Vec2(Complex(1), Complex(0))},
             {"V", Vec2(Complex(0), Complex(1))},
             {"D", Vec2(Complex(s), Complex(s))},
             {"A", Vec2(Complex(s), Complex(-s))},
             {"R", Vec2(Complex(s), s * i)},
             {"L", Vec2(Complex(s), -s * i)}}};
}

ProjectorSetting make_setting(const Analyzer& a, const Analyzer& b) {
    return {a.jones, b.jones, std::string(a.name) + b.name};
}

// Tr[(|a><a| (x) |b><b|) (sigma_i (x) sigma_j)] = S_i(a) S_j(b), S_0 = 1.
std::array<double, 16> design_row(const ProjectorSetting& s) {
    std::array<double, 4> sa{}, sb{};
    for (int j = 0; j < 4; ++j) {
        sa[j] = (s.jones_a.adjoint() * pauli(j) * s.jones_a)(0, 0).real();
        sb[j] = (s.jones_b.adjoint() * pauli(j) * s.jones_b)(0, 0).real();
    }
    std::array<double, 16> row{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) row[4 * i + j] = sa[i] * sb[j];
    }
    return row;
}

}  // namespace

void SourceModel::validate() const {
    if (!(werner_v >= 1.0 / 3.0 - 1e-12 && werner_v <= 1.0)) throw DomainError("SourceModel: werner_v outside [1/3, 1]");
    if (!(mu >= 0.001 && mu <= 0.1)) throw DomainError("SourceModel: mu outside [0.001, 0.1]");
    if (!(pulse_rate_hz > 0.0)) throw DomainError("SourceModel: pulse rate must be > 0");
}

void DetectorModel::validate() const {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw DomainError("DetectorModel: efficiency outside (0, 1]");
    if (!(dark_prob >= 0.0 && dark_prob <= 1.0)) throw DomainError("DetectorModel: dark_prob outside [0, 1]");
    if (!(accidental_floor >= 0.0 && accidental_floor <= 1.0)) {
        throw DomainError("DetectorModel: accidental_floor outside [0, 1]");
    }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

SourceModel calibrate_source(double target_c, double target_hh_vv_ratio) {
    if (!(target_c > 0.5 && target_c <= 1.0)) throw DomainError("calibrate_source: target concurrence outside (1/2, 1]");
    if (!(target_hh_vv_ratio >= 1.0)) throw DomainError("calibrate_source: HH/VV ratio must be >= 1");
    const double gamma_s = 0.5 * std::log(target_hh_vv_ratio);
    const double v = (2.0 * target_c * std::cosh(gamma_s) + 1.0) / 3.0;
    if (!(v >= 1.0 / 3.0 && v <= 1.0 + 1e-12)) {
        throw DomainError("calibrate_source: infeasible targets (Werner visibility would exceed 1)");
    }
    SourceModel m;
    m.werner_v = std::min(v, 1.0);
    m.source_pdl = PdlElement(gamma_s, StokesVec{0, 0, 1});
    return m;
}

ChannelOutcome source_state(const SourceModel& m) {
    m.validate();
    return apply_local(werner(m.werner_v), pdl_operator(m.source_pdl), pauli(0));
}

std::vector<ProjectorSetting> settings_16() {
    const auto an = analyzers();
    // H=0 V=1 D=2 R=4 L=5
    static constexpr std::array<std::pair<int, int>, 16> kPairs = {{{0, 0},
                                                                    {0, 1},
                                                                    {1, 1},
                                                                    {1, 0},
                                                                    {4, 0},
                                                                    {4, 1},
                                                                    {2, 1},
                                                                    {2, 0},
                                                                    {2, 4},
                                                                    {2, 2},
                                                                    {4, 2},
                                                                    {0, 2},
                                                                    {1, 2},
                                                                    {1, 5},
                                                                    {0, 5},
                                                                    {4, 5}}};
    std::vector<ProjectorSetting> out;
    out.reserve(kPairs.size());
    for (const auto& [a, b] : kPairs) out.push_back(make_setting(an[a], an[b]));
    return out;
}

std::vector<ProjectorSetting> settings_36() {
    const auto an = analyzers();
    std::vector<ProjectorSetting> out;
    out.reserve(36);
    for (const auto& a : an) {
        for (const auto& b : an) out.push_back(make_setting(a, b));
    }
    return out;
}

double expected_coincidences(const ChannelOutcome& outcome, const ProjectorSetting& s, const SourceModel& src,
                             const DetectorModel& det, std::uint64_t pulses) {
    const Vec4 ab = kron(s.jones_a, s.jones_b);
    const double p = std::max(0.0, (ab.adjoint() * outcome.rho.mat() * ab)(0, 0).real());
    const double eta2 = det.efficiency * det.efficiency;
    return static_cast<double>(pulses) *
           (src.mu * eta2 * outcome.rate * p + det.accidental_floor + det.dark_prob * det.dark_prob);
}

std::vector<CountRecord> simulate_counts(const ChannelOutcome& outcome, const std::vector<ProjectorSetting>& settings,
                                         const SourceModel& src, const DetectorModel& det, std::uint64_t pulses,
                                         std::uint64_t seed) {
    std::vector<CountRecord> records;
    records.reserve(settings.size());
    for (std::size_t k = 0; k < settings.size(); ++k) {
        CountRecord r;
        r.setting = k;
        r.expected = expected_coincidences(outcome, settings[k], src, det, pulses);
        if (r.expected > 0.0) {
            std::mt19937_64 gen(derive_seed(seed, k));
            std::poisson_distribution<std::uint64_t> poisson(r.expected);
            r.observed = poisson(gen);
        }
        records.push_back(r);
    }
    return records;
}

Mat4 reconstruct_frequencies(const std::vector<double>& freqs, const std::vector<ProjectorSetting>& settings) {
    if (freqs.size() != settings.size()) throw DomainError("reconstruct: one frequency per setting required");
    const auto n = static_cast<Eigen::Index>(freqs.size());
    Eigen::MatrixXd design(n, 16);
    Eigen::VectorXd counts(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto row = design_row(settings[static_cast<std::size_t>(r)]);
        for (int c = 0; c < 16; ++c) design(r, c) = row[c];
        counts(r) = freqs[static_cast<std::size_t>(r)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < 16) throw DomainError("reconstruct: setting set is not informationally complete");
    const Eigen::VectorXd x = qr.solve(counts);
    if (!(x(0) > 0.0)) throw DomainError("reconstruct: no coincidences to normalize");
    Mat4 rho = Mat4::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) rho += x(4 * i + j) * kron(pauli(i), pauli(j));
    }
    rho /= 4.0 * x(0);
    return (rho + rho.adjoint()) * 0.5;
}

Mat4 reconstruct(const std::vector<CountRecord>& records, const std::vector<ProjectorSetting>& settings) {
    std::vector<double> freqs(settings.size(), 0.0);
    std::vector<bool> seen(settings.size(), false);
    for (const auto& rec : records) {
        if (rec.setting >= settings.size()) throw DomainError("reconstruct: record refers to an unknown setting");
        freqs[rec.setting] += static_cast<double>(rec.observed);
        seen[rec.setting] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw DomainError("reconstruct: every setting needs a count record");
    }
    return reconstruct_frequencies(freqs, settings);
}

DensityMatrix4 project_physical(const Mat4& h) {
    Eigen::SelfAdjointEigenSolver<Mat4> es((h + h.adjoint()) * 0.5);
    if (es.info() != Eigen::Success) throw SolverError("project_physical: eigensolver failed");
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) lam[k] = es.eigenvalues()(k);
    const double tr = lam[0] + lam[1] + lam[2] + lam[3];
    for (double& l : lam) l /= tr;
    std::array<bool, 4> zeroed{};
    for (;;) {
        const auto it = std::min_element(lam.begin(), lam.end());
        if (*it >= 0.0) break;
        const double deficit = -*it;
        const auto idx = static_cast<std::size_t>(it - lam.begin());
        lam[idx] = 0.0;
        zeroed[idx] = true;
        int positive = 0;
        for (std::size_t k = 0; k < 4; ++k) positive += !zeroed[k] && lam[k] > 0.0;
        if (positive == 0) break;
        for (std::size_t k = 0; k < 4; ++k) {
            if (!zeroed[k] && lam[k] > 0.0) lam[k] -= deficit / positive;
        }
    }
    Eigen::Vector4d d;
    for (int k = 0; k < 4; ++k) d(k) = lam[k];
    const Mat4 v = es.eigenvectors();
    return DensityMatrix4::from_matrix(v * d.cast<Complex>().asDiagonal() * v.adjoint());
}

DensityMatrix4 tomograph(const ChannelOutcome& outcome, const std::vector<ProjectorSetting>& settings,
                         const SourceModel& src, const DetectorModel& det, std::uint64_t pulses, std::uint64_t seed) {
    return project_physical(reconstruct(simulate_counts(outcome, settings, src, det, pulses, seed), settings));
}

}  // namespace pdlent
