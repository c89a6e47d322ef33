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

#include "pdlent/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "pdlent/channels.hpp"
#include "pdlent/compensation.hpp"
#include "pdlent/instrument.hpp"
#include "pdlent/sampling.hpp"

namespace pdlent {
namespace {

template <typename F>
SuiteResult timed(const std::string& name, double tol, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    const double err = body();
    const auto t1 = std::chrono::steady_clock::now();
    return {name, err, tol, std::chrono::duration<double>(t1 - t0).count(), std::isfinite(err) && err <= tol};
}

double closed_form_oracle(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 3));
    double worst = 0.0;
    for (int k = 0; k < o.samples; ++k) {
        const CorrelationT t = random_bell_diagonal(rng);
        const DensityMatrix4 rho = bell_diagonal(t);
        const PdlElement a = random_pdl(rng, 7.0), b = random_pdl(rng, 7.0);
        const double brute = concurrence(apply_local(rho, pdl_operator(a), pdl_operator(b)).rho);
        const double closed = o.predict(concurrence(rho), a.gamma(), b.gamma(), kappa(t, a.axis(), b.axis()));
        worst = std::max(worst, std::abs(brute - closed));
    }
    return worst;
}

double orientation_spread(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 5));
    const DensityMatrix4 rho = werner((2 * 0.925 + 1) / 3);
    double worst = 0.0;
    for (double db : {1.25, 2.55, 3.7, 5.1, 6.3}) {
        double lo = 1.0, hi = 0.0;
        for (int k = 0; k < 100; ++k) {
            const PdlElement a = PdlElement::from_db(db, random_unit_axis(rng));
            const double c = concurrence(apply_local(rho, pdl_operator(a), pauli(0)).rho);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

double mapping_mismatch(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 6));
    double worst = 0.0;
    for (BellKind kind : kAllBellKinds) {
        const DensityMatrix4 rho = bell_state(kind);
        const CorrelationT t = correlation_of(rho);
        for (int k = 0; k < 100; ++k) {
            const PdlElement a = random_pdl(rng, 7.0);
            const PdlElement b = equivalence_map(a, t);
            const Mat4 lhs = apply_local(rho, pdl_operator(a), pauli(0)).rho.mat();
            const Mat4 rhs = apply_local(rho, pauli(0), pdl_operator(b)).rho.mat();
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double conservation_error(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 7));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < o.samples; ++k) {
        const CorrelationT t = random_bell_diagonal(rng);
        const DensityMatrix4 rho = bell_diagonal(t);
        const double c0 = concurrence(rho);
        const double total = gamma_from_db(7.0) * u(rng);
        const double split = u(rng);
        const PdlElement a(total * split, random_unit_axis(rng));
        const PdlElement b(total * (1 - split), random_unit_axis(rng));
        const ChannelOutcome out = apply_local(rho, pdl_operator(a), pdl_operator(b));
        const double expected = average_entanglement(c0, a.gamma(), b.gamma());
        worst = std::max(worst, std::abs(out.rate * concurrence(out.rho) - expected));
        worst = std::max(worst, std::abs(expected - average_entanglement(c0, total, 0.0)));
    }
    return worst;
}

double concat_law(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 8));
    std::uniform_real_distribution<double> u(0.05, gamma_from_db(7.0));
    double worst = 0.0;
    for (int k = 0; k < o.samples; ++k) {
        const PdlElement e1(u(rng), random_unit_axis(rng)), e2(u(rng), random_unit_axis(rng));
        const PdlElement agg = concat_pdl(e1, e2);
        const double dot = e1.axis().dot(e2.axis());
        const double law = std::cosh(e1.gamma()) * std::cosh(e2.gamma()) + dot * std::sinh(e1.gamma()) * std::sinh(e2.gamma());
        worst = std::max(worst, std::abs(std::cosh(agg.gamma()) - law));
        const double theta = angle_from_aggregate(agg.gamma(), e1.gamma(), e2.gamma());
        worst = std::max(worst, std::abs(std::cos(theta) - dot));
    }
    return worst;
}

double tomography_roundtrip(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 10));
    const auto settings = settings_36();
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const DensityMatrix4 rho = random_density_matrix(rng);
        std::vector<double> freqs;
        for (const auto& s : settings) {
            const Vec4 ab = kron(s.jones_a, s.jones_b);
            freqs.push_back((ab.adjoint() * rho.mat() * ab)(0, 0).real());
        }
        worst = std::max(worst, trace_distance(reconstruct_frequencies(freqs, settings), rho.mat()));
    }
    return worst;
}

double compensator_design(const VerifyOptions& o) {
    Rng rng(derive_seed(o.seed, 11));
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const CorrelationT t = random_bell_diagonal(rng);
        const DensityMatrix4 rho = bell_diagonal(t);
        const PdlElement a = random_pdl(rng, 7.0);
        const CompensatorPlan plan = design_compensator(a, t);
        const double achieved = concurrence(apply_local(rho, pdl_operator(a), pdl_operator(plan.element)).rho);
        worst = std::max(worst, std::abs(achieved - plan.predicted_concurrence));
        for (int j = 0; j < 20; ++j) {
            const PdlElement alt = random_pdl(rng, 7.0);
            const double c = concurrence(apply_local(rho, pdl_operator(a), pdl_operator(alt)).rho);
            worst = std::max(worst, c - plan.predicted_concurrence);
        }
    }
    for (BellKind kind : kAllBellKinds) {
        const DensityMatrix4 rho = bell_state(kind);
        const PdlElement a = random_pdl(rng, 7.0);
        const CompensatorPlan plan = design_compensator(a, correlation_of(rho));
        const double achieved = concurrence(apply_local(rho, pdl_operator(a), pdl_operator(plan.element)).rho);
        worst = std::max(worst, std::abs(achieved - 1.0));
    }
    return worst;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(const VerifyOptions& opts) {
    return {
        timed("oracle_equivalence", 1e-9, [&] { return closed_form_oracle(opts); }),
        timed("orientation_independence", 1e-12, [&] { return orientation_spread(opts); }),
        timed("equivalence_mapping", 1e-12, [&] { return mapping_mismatch(opts); }),
        timed("average_entanglement", 1e-9, [&] { return conservation_error(opts); }),
        timed("concatenation_cosh_law", 1e-8, [&] { return concat_law(opts); }),
        timed("tomography_roundtrip", 1e-8, [&] { return tomography_roundtrip(opts); }),
        timed("compensator_design", 1e-9, [&] { return compensator_design(opts); }),
    };
}

std::string format_report(const std::vector<SuiteResult>& results) {
    std::string out;
    char buf[256];
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%s %-30s max_err=%.3e tol=%.1e time=%.3fs\n", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.max_error, r.tolerance, r.seconds);
        out += buf;
    }
    return out;
}

}  // namespace pdlent
