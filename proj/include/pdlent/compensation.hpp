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

// Search for the channel-B PDL element that maximizes post-selected
// concurrence, mirroring the experimental "rotate the compensator and watch
// the tomography" protocol.

#include <cstdint>
#include <vector>

#include "pdlent/channels.hpp"
#include "pdlent/instrument.hpp"
#include "pdlent/qmath.hpp"

namespace pdlent {

/// Count model used when the search objective comes from simulated
/// tomography instead of the exact state.
struct TomographyNoise {
    SourceModel source{};
    DetectorModel detector{};
    std::uint64_t pulses = 1'000'000;
    std::vector<ProjectorSetting> settings = settings_36();
};

struct SearchConfig {
    int sphere_points = 128;
    std::vector<double> gamma_grid;  ///< nepers
    int refine_iters = 200;
    double refine_tol = 1e-6;
    bool noisy = false;
    int confirm_top = 8;      ///< noisy mode: grid candidates re-measured
    int confirm_repeats = 4;  ///< noisy mode: fresh tomographies per candidate
    std::uint64_t seed = 0;
    TomographyNoise noise{};

    /// 128 lattice points and 7 magnitudes spanning gamma_a +/- 30%.
    static SearchConfig defaults_for(double gamma_a);
    /// Throws DomainError on out-of-range fields.
    void validate() const;
};

struct Evaluation {
    PdlElement element;
    double concurrence = 0.0;
    double rate = 0.0;
    double linear_entropy_a = 0.0;
};

struct SearchResult {
    PdlElement best;
    double best_concurrence = 0.0;
    std::size_t best_index = 0;
    std::vector<Evaluation> evaluations;  ///< grid first, then refinement, in evaluation order
};

/// Coarse Fibonacci-lattice x gamma-grid scan followed by coordinate descent
/// on (polar angle, azimuth, gamma) with step halving. In noisy mode the
/// descent is replaced by re-measuring the `confirm_top` best grid points
/// `confirm_repeats` times each and keeping the best mean; best_concurrence
/// is then that mean. Candidates that extinguish the pair flux are recorded
/// with objective 0. Ties go to the earliest candidate, so the result is
/// deterministic for a given config.
SearchResult optimize_compensator(const ChannelSpec& channel_a, const DensityMatrix4& base, const SearchConfig& cfg);

/// Linear entropy of photon A's reduced state.
double entropy_feedback(const DensityMatrix4& rho);

}  // namespace pdlent
