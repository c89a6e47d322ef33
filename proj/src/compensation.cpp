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

#include "pdlent/compensation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pdlent/errors.hpp"

namespace pdlent {
namespace {

constexpr double kMinAngleStep = 1e-7;
constexpr std::uint64_t kObjectiveStream = 0x636f6d70;  // "comp"

class Objective {
   public:
    Objective(const ChannelSpec& channel_a, const DensityMatrix4& base, const SearchConfig& cfg)
        : channel_a_(channel_a), base_(base), cfg_(cfg) {}

    double operator()(const PdlElement& candidate, std::vector<Evaluation>& trace) const {
        Evaluation ev{candidate, 0.0, 0.0, 0.0};
        try {
            const ChannelOutcome out = apply_channels(base_, channel_a_, ChannelSpec{candidate, {}});
            ev.rate = out.rate;
            if (cfg_.noisy) {
                const auto& n = cfg_.noise;
                const DensityMatrix4 est = tomograph(out, n.settings, n.source, n.detector, n.pulses,
                                                     derive_seed(cfg_.seed, kObjectiveStream, trace.size()));
                ev.concurrence = concurrence(est);
                ev.linear_entropy_a = entropy_feedback(est);
            } else {
                ev.concurrence = concurrence(out.rho);
                ev.linear_entropy_a = entropy_feedback(out.rho);
            }
        } catch (const ExtinctionError&) {
            ev = Evaluation{candidate, 0.0, 0.0, 0.0};
        }
        trace.push_back(ev);
        return ev.concurrence;
    }

   private:
    const ChannelSpec& channel_a_;
    const DensityMatrix4& base_;
    const SearchConfig& cfg_;
};

struct Point {
    double polar;
    double azimuth;
    double gamma;

    PdlElement element() const { return {gamma, StokesVec::from_angles(polar, azimuth)}; }
};

}  // namespace

SearchConfig SearchConfig::defaults_for(double gamma_a) {
    SearchConfig cfg;
    for (int k = 0; k < 7; ++k) cfg.gamma_grid.push_back(gamma_a * (0.7 + 0.1 * k));
    return cfg;
}

void SearchConfig::validate() const {
    if (sphere_points < 32) throw DomainError("SearchConfig: sphere_points must be >= 32");
    if (gamma_grid.empty()) throw DomainError("SearchConfig: empty gamma grid");
    for (double g : gamma_grid) {
        if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("SearchConfig: gamma grid values must be >= 0");
    }
    if (refine_iters < 0) throw DomainError("SearchConfig: refine_iters must be >= 0");
    if (!(refine_tol > 0.0)) throw DomainError("SearchConfig: refine_tol must be > 0");
    if (confirm_top < 1 || confirm_repeats < 1) throw DomainError("SearchConfig: confirmation counts must be >= 1");
    if (noisy) {
        noise.source.validate();
        noise.detector.validate();
        if (noise.pulses == 0) throw DomainError("SearchConfig: pulses must be >= 1");
    }
}

SearchResult optimize_compensator(const ChannelSpec& channel_a, const DensityMatrix4& base, const SearchConfig& cfg) {
    cfg.validate();
    const Objective objective(channel_a, base, cfg);
    SearchResult result;
    auto& trace = result.evaluations;

    const auto lattice = fibonacci_sphere(cfg.sphere_points);
    Point best{0.0, 0.0, 0.0};
    double best_value = -1.0;
    for (double g : cfg.gamma_grid) {
        for (const auto& axis : lattice) {
            const Point p{axis.polar(), axis.azimuth(), g};
            const double v = objective(p.element(), trace);
            if (v > best_value) {
                best_value = v;
                best = p;
                result.best_index = trace.size() - 1;
            }
        }
    }

    if (cfg.noisy) {
        std::vector<std::size_t> order(trace.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return trace[a].concurrence > trace[b].concurrence;
        });
        order.resize(std::min(order.size(), static_cast<std::size_t>(cfg.confirm_top)));
        double best_mean = -1.0;
        for (std::size_t idx : order) {
            const PdlElement candidate = trace[idx].element;
            double sum = 0.0;
            for (int r = 0; r < cfg.confirm_repeats; ++r) sum += objective(candidate, trace);
            const double mean = sum / cfg.confirm_repeats;
            if (mean > best_mean) {
                best_mean = mean;
                result.best_index = idx;
            }
        }
        result.best = trace[result.best_index].element;
        result.best_concurrence = best_mean;
        return result;
    }

    // Initial steps: lattice spacing in angle, grid spacing in magnitude.
    double angle_step = std::sqrt(4.0 * std::numbers::pi / cfg.sphere_points);
    double gamma_step = 0.1 * std::max(1e-3, *std::max_element(cfg.gamma_grid.begin(), cfg.gamma_grid.end()));
    if (cfg.gamma_grid.size() > 1) {
        auto sorted = cfg.gamma_grid;
        std::sort(sorted.begin(), sorted.end());
        gamma_step = std::max(1e-6, (sorted.back() - sorted.front()) / static_cast<double>(sorted.size() - 1));
    }

    for (int iter = 0; iter < cfg.refine_iters && angle_step >= kMinAngleStep; ++iter) {
        const double start_value = best_value;
        for (int coord = 0; coord < 3; ++coord) {
            const double step = coord == 2 ? gamma_step : angle_step;
            for (double sign : {1.0, -1.0}) {
                Point p = best;
                double& x = coord == 0 ? p.polar : coord == 1 ? p.azimuth : p.gamma;
                x += sign * step;
                p.polar = std::clamp(p.polar, 0.0, std::numbers::pi);
                p.gamma = std::max(0.0, p.gamma);
                const double v = objective(p.element(), trace);
                if (v > best_value) {
                    best_value = v;
                    best = p;
                    result.best_index = trace.size() - 1;
                }
            }
        }
        if (best_value - start_value < cfg.refine_tol) {
            angle_step *= 0.5;
            gamma_step *= 0.5;
        }
    }

    result.best = trace[result.best_index].element;
    result.best_concurrence = trace[result.best_index].concurrence;
    return result;
}

double entropy_feedback(const DensityMatrix4& rho) { return linear_entropy(reduced_qubit(rho, Qubit::A)); }

}  // namespace pdlent
