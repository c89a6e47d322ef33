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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pdlent/errors.hpp"
#include "pdlent/experiments.hpp"
#include "pdlent/theory.hpp"

using namespace pdlent;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig ideal_config() {
    RunConfig cfg;
    cfg.c_b2b = 1.0;
    cfg.hh_vv_ratio = 1.0;
    return cfg;
}

std::vector<double> column(const CsvTable& t, const std::string& name) {
    std::vector<double> out;
    for (std::size_t r = 0; r < t.rows().size(); ++r) out.push_back(t.value(r, name));
    return out;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config parsing") {
    const RunConfig cfg = parse(
        "# testbed\n"
        "source.c_b2b = 0.9\n"
        "source.hh_vv_ratio=1.2   # trailing comment\n"
        "\n"
        "source.mu = 0.02\n"
        "source.pulse_rate_hz = 1e8\n"
        "det.efficiency = 0.25\n"
        "det.dark_prob = 1e-5\n"
        "det.accidental_floor = 1e-7\n"
        "tomo.pulses = 2000000\n"
        "run.seed = 42\n"
        "run.noisy = true\n"
        "pmd.q = 0.155\n"
        "pmd.axis = 1, 0, 0\n");
    CHECK(cfg.c_b2b == 0.9);
    CHECK(cfg.hh_vv_ratio == 1.2);
    CHECK(cfg.mu == 0.02);
    CHECK(cfg.pulse_rate_hz == 1e8);
    CHECK(cfg.detector.efficiency == 0.25);
    CHECK(cfg.detector.dark_prob == 1e-5);
    CHECK(cfg.detector.accidental_floor == 1e-7);
    CHECK(cfg.pulses == 2000000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.noisy);
    CHECK(cfg.pmd_q == 0.155);
    CHECK(cfg.pmd_axis.s1 == 1.0);
    CHECK(cfg.pmd_axis.s3 == 0.0);

    const RunConfig defaults = parse("");
    CHECK(defaults.c_b2b == 0.925);
    CHECK(defaults.hh_vv_ratio == 1.38);
    CHECK(defaults.pulses == 1000000);
    CHECK(!defaults.noisy);
}

TEST_CASE("config errors") {
    CHECK_THROWS_WITH_AS(parse("source.c_b2b = 0.9\nbogus.key = 1\n"), doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse("source.c_b2b = abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("source.c_b2b 0.9\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("tomo.pulses = -5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("run.noisy = maybe\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("pmd.axis = 1, 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("/nonexistent/dir/run.cfg"), std::runtime_error);

    RunConfig bad;
    bad.c_b2b = 0.3;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = RunConfig{};
    bad.pmd_q = 0.7;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = RunConfig{};
    bad.mu = 1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("csv formatting") {
    CHECK(format_number(0.925) == "0.925");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-10) == "1e-10");

    CsvTable t({"a", "b"});
    t.add_row({1.5, -2.0});
    t.add_row(std::vector<std::string>{"x", "y"});
    CHECK(t.to_csv() == "a,b\n1.5,-2\nx,y\n");
    CHECK(t.column("b") == 1);
    CHECK(t.value(0, "b") == -2.0);
    CHECK_THROWS_AS(t.add_row(std::vector<double>{1.0}), std::logic_error);
    CHECK_THROWS_AS(t.column("c"), std::out_of_range);

    CHECK(companion_path("out/run.csv", "_metrics.txt") == "out/run_metrics.txt");
    CHECK(companion_path("run", "_reduced.csv") == "run_reduced.csv");
}

TEST_CASE("write_text_file") {
    const auto path = (std::filesystem::temp_directory_path() / "pdlent_write_test.csv").string();
    write_text_file(path, "a\n1\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "a\n1\n");
    std::remove(path.c_str());
    CHECK_THROWS_WITH_AS(write_text_file("/nonexistent/dir/x.csv", ""), doctest::Contains("/nonexistent/dir/x.csv"),
                         std::runtime_error);
}

TEST_CASE("b2b") {
    const auto r = run_b2b(RunConfig{});
    CHECK(std::abs(r.concurrence - 0.925) <= 1e-3);
    CHECK(std::abs(r.hh_vv_ratio - 1.38) <= 5e-3);
    CHECK(r.fidelity == doctest::Approx(0.962365).epsilon(1e-6));
    CHECK(r.matrix_table().rows().size() == 16);
    CHECK(r.metrics_text().find("concurrence=0.925\n") != std::string::npos);
    CHECK(r.metrics_text().find("hh_vv_ratio=1.38\n") != std::string::npos);

    const auto ideal = run_b2b(ideal_config());
    CHECK((ideal.rho.mat() - bell_state(BellKind::PhiPlus).mat()).cwiseAbs().maxCoeff() < 1e-15);

    RunConfig noisy;
    noisy.noisy = true;
    noisy.seed = 9;
    const auto a = run_b2b(noisy);
    const auto b = run_b2b(noisy);
    CHECK(a.matrix_table().to_csv() == b.matrix_table().to_csv());
    CHECK(a.metrics_text() == b.metrics_text());
    noisy.seed = 10;
    CHECK(run_b2b(noisy).matrix_table().to_csv() != a.matrix_table().to_csv());
}

TEST_CASE("sweep-pdl") {
    const RunConfig cfg;
    const auto t = run_sweep_pdl(cfg, {1.25, 2.55, 3.7, 5.1, 6.3}, 50);
    CHECK(t.rows().size() == 250);
    CHECK(t.header() == std::vector<std::string>{"pdl_db_emulator", "ax1", "ax2", "ax3", "aggregate_pdl_db", "kappa",
                                                  "concurrence", "purity", "rate"});
    const double c_source = 0.925 * std::cosh(calibrate_source(0.925, 1.38).source_pdl.gamma());
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
        const double agg = gamma_from_db(t.value(r, "aggregate_pdl_db"));
        CHECK(std::abs(t.value(r, "concurrence") - c_source / std::cosh(agg)) <= 1e-6);
    }

    const auto zero = run_sweep_pdl(cfg, {0.0}, 5);
    for (std::size_t r = 0; r < zero.rows().size(); ++r) {
        CHECK(zero.value(r, "aggregate_pdl_db") == doctest::Approx(1.3988).epsilon(1e-4));
        CHECK(zero.value(r, "concurrence") == doctest::Approx(run_b2b(cfg).concurrence).epsilon(1e-8));
    }
    CHECK(t.to_csv() == run_sweep_pdl(cfg, {1.25, 2.55, 3.7, 5.1, 6.3}, 50).to_csv());
}

TEST_CASE("compensate") {
    const RunConfig cfg;
    std::vector<double> thetas;
    for (int k = 0; k <= 12; ++k) thetas.push_back(15.0 * k);
    const auto t = run_compensate(cfg, 5.1, thetas, 0.0);
    CHECK(t.rows().size() == 13);
    const auto agg = column(t, "aggregate_pdl_db");
    CHECK(*std::max_element(agg.begin(), agg.end()) == doctest::Approx(6.4988).epsilon(1e-4));
    CHECK(*std::min_element(agg.begin(), agg.end()) == doctest::Approx(3.7012).epsilon(1e-4));

    const auto base = experiment_base_state(cfg);
    const CorrelationT tb = correlation_of(base);
    const PdlElement source = virtual_source_pdl(cfg);
    for (std::size_t r = 0; r < thetas.size(); ++r) {
        const double th = thetas[r] * std::numbers::pi / 180.0;
        const PdlElement a = concat_pdl(source, PdlElement::from_db(5.1, {std::sin(th), 0, std::cos(th)}));
        const auto plan = design_compensator(a, tb);
        CHECK(std::abs(t.value(r, "c_compensated") - plan.predicted_concurrence) <= 1e-6);
        CHECK(t.value(r, "c_compensated") > t.value(r, "c_uncompensated"));
        CHECK(t.value(r, "rate_comp") < t.value(r, "rate_uncomp"));
    }

    const auto pmd = run_compensate(cfg, 5.1, {0.0, 180.0}, 0.155);
    for (std::size_t r = 0; r < 2; ++r) CHECK(std::abs(pmd.value(r, "c_compensated") - 0.69) <= 1e-3);
}

TEST_CASE("compensate noisy reruns are identical") {
    RunConfig cfg;
    cfg.noisy = true;
    cfg.seed = 3;
    const auto a = run_compensate(cfg, 5.1, {0.0, 90.0}, 0.0);
    CHECK(a.to_csv() == run_compensate(cfg, 5.1, {0.0, 90.0}, 0.0).to_csv());
}

TEST_CASE("tradeoff") {
    const double g = gamma_from_db(5.1);
    const auto t = run_tradeoff(RunConfig{}, 5.1, 50);
    CHECK(t.rows().size() == 50);
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
        CHECK(std::abs(t.value(r, "avg_entanglement") - std::exp(-2 * g)) <= 1e-9);
    }

    const auto bell = run_tradeoff(ideal_config(), 5.1, 400);
    const auto rb = rate_bounds(g, g);
    const auto c = column(bell, "concurrence_norm");
    const auto rate = column(bell, "rate_norm");
    for (std::size_t r = 0; r < c.size(); ++r) {
        CHECK(c[r] >= rb.c_min - 1e-9);
        CHECK(c[r] <= 1.0 + 1e-9);
        CHECK(rate[r] >= rb.rate_at_kappa_minus1 - 1e-9);
        CHECK(rate[r] <= rb.rate_at_kappa_plus1 + 1e-9);
    }
    CHECK(*std::max_element(c.begin(), c.end()) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(*std::min_element(c.begin(), c.end()) == doctest::Approx(rb.c_min).epsilon(1e-2));
}

TEST_CASE("entropy-feedback") {
    const auto plain = run_entropy_feedback(RunConfig{}, 5.1, 200);
    const auto s = column(plain.sweep, "s_linear_A");
    const auto c = column(plain.sweep, "concurrence");
    CHECK(std::max_element(s.begin(), s.end()) - s.begin() == std::max_element(c.begin(), c.end()) - c.begin());
    CHECK(plain.reduced.rows().size() == 12);

    RunConfig pmd;
    pmd.pmd_q = 0.155;
    const auto r = run_entropy_feedback(pmd, 5.27, 200);
    const auto sp = column(r.sweep, "s_linear_A");
    CHECK(*std::min_element(sp.begin(), sp.end()) <= 0.3);
    CHECK(*std::max_element(sp.begin(), sp.end()) >= 0.95);

    const auto ideal = run_entropy_feedback(ideal_config(), 0.0, 10);
    for (double x : column(ideal.sweep, "s_linear_A")) CHECK(x == doctest::Approx(1.0));
}

}
