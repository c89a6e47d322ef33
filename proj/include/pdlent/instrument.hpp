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

// Emulated testbed: entangled-pair source, detectors, polarization analyzers,
// Poisson coincidence counts and tomographic reconstruction.

#include <cstdint>
#include <string>
#include <vector>

#include "pdlent/channels.hpp"
#include "pdlent/qmath.hpp"

namespace pdlent {

/// Werner-noise Bell source followed by a virtual H-aligned PDL on photon A.
struct SourceModel {
    double werner_v = 1.0;
    PdlElement source_pdl = PdlElement::from_db(1.4, StokesVec{0, 0, 1});
    double mu = 0.01;  ///< pairs per pulse
    double pulse_rate_hz = 5e7;

    /// Throws DomainError when a field is out of range.
    void validate() const;
};

struct DetectorModel {
    double efficiency = 0.20;
    double dark_prob = 4e-5;        ///< per gate
    double accidental_floor = 0.0;  ///< per-pulse coincidence probability

    void validate() const;
};

/// Analyzer settings for photons A and B.
struct ProjectorSetting {
    Vec2 jones_a;
    Vec2 jones_b;
    std::string label;
};

struct CountRecord {
    std::size_t setting = 0;
    double expected = 0.0;
    std::uint64_t observed = 0;
};

/// Deterministic 64-bit sub-seed from a master seed and two stream indices.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

/// Werner visibility and source PDL reproducing a back-to-back concurrence
/// `target_c` and HH/VV population ratio `target_hh_vv_ratio`.
SourceModel calibrate_source(double target_c, double target_hh_vv_ratio);

/// Werner state filtered by the source PDL on photon A.
ChannelOutcome source_state(const SourceModel& m);

/// Canonical 16-setting tomography set over the analyzers H, V, D, R, L.
std::vector<ProjectorSetting> settings_16();
/// All 36 pairs of the analyzers H, V, D, A, R, L.
std::vector<ProjectorSetting> settings_36();

/// pulses * (mu eta^2 Gamma <ab|rho|ab> + accidental_floor + dark_prob^2).
double expected_coincidences(const ChannelOutcome& outcome, const ProjectorSetting& s, const SourceModel& src,
                             const DetectorModel& det, std::uint64_t pulses);

/// One Poisson draw per setting, each from a generator seeded by
/// derive_seed(seed, setting index).
std::vector<CountRecord> simulate_counts(const ChannelOutcome& outcome, const std::vector<ProjectorSetting>& settings,
                                         const SourceModel& src, const DetectorModel& det, std::uint64_t pulses,
                                         std::uint64_t seed);

/// Least-squares linear inversion of per-setting frequencies (any common
/// scale) onto the 16-dimensional Hermitian operator space, normalized to
/// unit trace. Throws DomainError for a rank-deficient setting set or zero
/// total weight.
Mat4 reconstruct_frequencies(const std::vector<double>& freqs, const std::vector<ProjectorSetting>& settings);

/// Least-squares linear inversion onto the 16-dimensional Hermitian operator
/// space, normalized to unit trace. The result may have negative eigenvalues.
/// Throws DomainError for a rank-deficient setting set or zero total counts.
Mat4 reconstruct(const std::vector<CountRecord>& records, const std::vector<ProjectorSetting>& settings);

/// Nearest physical state: the most negative eigenvalue is zeroed and its
/// deficit spread evenly over the remaining positive eigenvalues, repeatedly,
/// until the spectrum is nonnegative.
DensityMatrix4 project_physical(const Mat4& h);

/// Count simulation, reconstruction and projection in one step.
DensityMatrix4 tomograph(const ChannelOutcome& outcome, const std::vector<ProjectorSetting>& settings,
                         const SourceModel& src, const DetectorModel& det, std::uint64_t pulses, std::uint64_t seed);

}  // namespace pdlent
