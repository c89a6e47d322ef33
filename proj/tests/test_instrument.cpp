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


#include <cmath>
#include <set>

#include "doctest.h"
#include "pdlent/errors.hpp"
#include "pdlent/instrument.hpp"
#include "pdlent/sampling.hpp"

using namespace pdlent;

namespace {

std::vector<double> exact_probabilities(const DensityMatrix4& rho, const std::vector<ProjectorSetting>& settings) {
    std::vector<double> p;
    for (const auto& s : settings) {
        const Vec4 ab = kron(s.jones_a, s.jones_b);
        p.push_back((ab.adjoint() * rho.mat() * ab)(0, 0).real());
    }
    return p;
}

DetectorModel ideal_detector() {
    DetectorModel d;
    d.efficiency = 1.0;
    d.dark_prob = 0.0;
    return d;
}

}  // namespace

TEST_SUITE("instrument") {

TEST_CASE("model validation") {
    SourceModel s;
    CHECK_NOTHROW(s.validate());
    s.mu = 0.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = SourceModel{};
    s.werner_v = 0.2;
    CHECK_THROWS_AS(s.validate(), DomainError);

    DetectorModel d;
    CHECK_NOTHROW(d.validate());
    d.efficiency = 0.0;
    CHECK_THROWS_AS(d.validate(), DomainError);
    d = DetectorModel{};
    d.dark_prob = -1.0;
    CHECK_THROWS_AS(d.validate(), DomainError);
}

TEST_CASE("calibrate_source") {
    const SourceModel ideal = calibrate_source(1.0, 1.0);
    CHECK(ideal.werner_v == doctest::Approx(1.0));
    CHECK(ideal.source_pdl.is_zero());
    const auto phi = source_state(ideal);
    CHECK(phi.rate == doctest::Approx(1.0));
    CHECK(fidelity_to_pure(phi.rho, bell_vector(BellKind::PhiPlus)) == doctest::Approx(1.0));

    const SourceModel m = calibrate_source(0.925, 1.38);
    CHECK(m.source_pdl.gamma() == doctest::Approx(0.161042).epsilon(1e-6));
    CHECK(m.source_pdl.db() == doctest::Approx(1.3988).epsilon(1e-4));
    CHECK(m.werner_v == doctest::Approx(0.958014).epsilon(1e-6));

    const auto out = source_state(m);
    CHECK(std::abs(concurrence(out.rho) - 0.925) < 1e-6);
    CHECK(out.rho(0, 0).real() / out.rho(3, 3).real() == doctest::Approx(1.38).epsilon(1e-9));
    CHECK(fidelity_to_pure(out.rho, bell_vector(BellKind::PhiPlus)) == doctest::Approx(0.962365).epsilon(1e-6));
    CHECK(out.rate == doctest::Approx(0.862319).epsilon(1e-6));

    CHECK_THROWS_AS(calibrate_source(0.4, 1.38), DomainError);
    CHECK_THROWS_AS(calibrate_source(0.925, 0.9), DomainError);
    CHECK_THROWS_AS(calibrate_source(0.999, 3.0), DomainError);
}

TEST_CASE("setting sets") {
    const auto s36 = settings_36();
    const auto s16 = settings_16();
    CHECK(s36.size() == 36);
    CHECK(s16.size() == 16);
    std::set<std::string> labels;
    for (const auto& s : s36) {
        CHECK(std::abs(s.jones_a.norm() - 1.0) < 1e-12);
        CHECK(std::abs(s.jones_b.norm() - 1.0) < 1e-12);
        labels.insert(s.label);
    }
    CHECK(labels.size() == 36);

    // Six analyzers from three mutually unbiased bases sum to 3 I per arm.
    Mat2 sum = Mat2::Zero();
    for (int k = 0; k < 6; ++k) sum += s36[static_cast<std::size_t>(6 * k)].jones_a * s36[static_cast<std::size_t>(6 * k)].jones_a.adjoint();
    CHECK((sum - 3.0 * Mat2::Identity()).norm() < 1e-12);
}

TEST_CASE("linear inversion from exact probabilities") {
    Rng rng(61);
    for (int k = 0; k < 50; ++k) {
        const auto rho = random_density_matrix(rng);
        for (const auto& settings : {settings_16(), settings_36()}) {
            const Mat4 h = reconstruct_frequencies(exact_probabilities(rho, settings), settings);
            CHECK((h - rho.mat()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    auto short_set = settings_16();
    short_set.pop_back();
    CHECK_THROWS_AS(reconstruct_frequencies(std::vector<double>(15, 1.0), short_set), DomainError);
    CHECK_THROWS_AS(reconstruct_frequencies(std::vector<double>(3, 1.0), settings_16()), DomainError);
}

TEST_CASE("end-to-end noiseless identity") {
    SourceModel m = calibrate_source(0.925, 1.38);
    const auto out = source_state(m);
    const auto settings = settings_36();
    std::vector<CountRecord> records;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const double e = expected_coincidences(out, settings[k], m, ideal_detector(), 1'000'000);
        records.push_back({k, e, 0});
    }
    std::vector<double> freqs;
    for (const auto& r : records) freqs.push_back(r.expected);
    const auto rho = project_physical(reconstruct_frequencies(freqs, settings));
    CHECK(trace_distance(rho.mat(), out.rho.mat()) <= 1e-8);
}

TEST_CASE("expected_coincidences") {
    const ChannelOutcome phi{bell_state(BellKind::PhiPlus), 1.0};
    const auto settings = settings_36();
    const ProjectorSetting& hh = settings[0];
    const ProjectorSetting& hv = settings[1];
    REQUIRE(hh.label == "HH");
    REQUIRE(hv.label == "HV");

    SourceModel src;
    src.mu = 0.01;
    CHECK(expected_coincidences(phi, hv, src, ideal_detector(), 1'000'000) == 0.0);

    DetectorModel det = ideal_detector();
    det.efficiency = 0.2;
    CHECK(expected_coincidences(phi, hh, src, det, 1'000'000) == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(expected_coincidences(phi, hh, src, det, 2'000'000) == 2.0 * expected_coincidences(phi, hh, src, det, 1'000'000));

    det.dark_prob = 4e-5;
    det.accidental_floor = 1e-6;
    CHECK(expected_coincidences(phi, hv, src, det, 1'000'000) == doctest::Approx(1.0 + 1.6e-3));
}

TEST_CASE("simulate_counts") {
    const ChannelOutcome phi{bell_state(BellKind::PhiPlus), 1.0};
    SourceModel src;
    DetectorModel det = ideal_detector();
    det.efficiency = 0.2;

    const auto a = simulate_counts(phi, settings_36(), src, det, 1'000'000, 99);
    const auto b = simulate_counts(phi, settings_36(), src, det, 1'000'000, 99);
    const auto c = simulate_counts(phi, settings_36(), src, det, 1'000'000, 100);
    bool differs = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].observed == b[k].observed);
        differs |= a[k].observed != c[k].observed;
        if (a[k].expected == 0.0) CHECK(a[k].observed == 0);
    }
    CHECK(differs);

    // 10^4 draws at expectation 200: the sample mean lies within 3 sigma.
    const std::vector<ProjectorSetting> many(10000, settings_36()[0]);
    const auto draws = simulate_counts(phi, many, src, det, 1'000'000, 5);
    double sum = 0.0;
    for (const auto& r : draws) sum += static_cast<double>(r.observed);
    const double mean = sum / 10000.0;
    CHECK(mean >= 199.58);
    CHECK(mean <= 200.42);
}

TEST_CASE("derive_seed") {
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s) {
        for (std::uint64_t i = 0; i < 256; ++i) seen.insert(derive_seed(7, s, i));
    }
    CHECK(seen.size() == 1024);
}

TEST_CASE("project_physical") {
    Mat4 h = Mat4::Zero();
    h.diagonal() << 0.6, 0.5, 0.0, -0.1;
    const auto p = project_physical(h);
    const auto e = eigvals_desc(p.mat());
    CHECK(e[0] == doctest::Approx(0.55));
    CHECK(e[1] == doctest::Approx(0.45));
    CHECK(e[2] == doctest::Approx(0.0));
    CHECK(e[3] == doctest::Approx(0.0));

    Rng rng(67);
    for (int k = 0; k < 100; ++k) {
        const auto rho = random_density_matrix(rng);
        CHECK((project_physical(rho.mat()).mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-12);
        const auto again = project_physical(project_physical(rho.mat()).mat());
        CHECK((again.mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("noisy tomography") {
    const SourceModel m = calibrate_source(0.925, 1.38);
    const auto out = source_state(m);
    double td = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto rho = tomograph(out, settings_36(), m, DetectorModel{}, 1'000'000, derive_seed(3, seed));
        CHECK(std::abs(rho.mat().trace().real() - 1.0) < 1e-12);
        CHECK(eigvals_desc(rho.mat())[3] >= 0.0);
        td += trace_distance(rho.mat(), out.rho.mat());
    }
    CHECK(td / 100.0 <= 0.06);
    CHECK_THROWS_AS(reconstruct(std::vector<CountRecord>(36), settings_36()), DomainError);
}

}
