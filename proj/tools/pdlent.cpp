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

// pdlent: regenerate the PDL / entanglement datasets as CSV.
//
//   pdlent b2b              [--config F] [--out F] [--seed N] [--noisy]
//   pdlent sweep-pdl        --pdl-db 1.25,2.55,3.7,5.1,6.3 --orientations 50
//   pdlent compensate       --pdl-db 5.1 --theta-deg 0,15,...,180 --pmd-q 0
//   pdlent tradeoff         --pdl-db 5.1 --samples 50
//   pdlent entropy-feedback --pdl-db 5.27 --samples 200 --pmd-q 0.155
//   pdlent verify           [--seed N]

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdlent/experiments.hpp"
#include "pdlent/verify.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool noisy = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, const std::string& default_out) {
    f.out = default_out;
    cmd->add_option("--config", f.config, "key=value configuration file");
    cmd->add_option("--out", f.out, "output CSV path")->capture_default_str();
    cmd->add_option("--seed", f.seed, "master seed (overrides run.seed)");
    cmd->add_flag("--noisy", f.noisy, "simulate Poisson counts and tomography");
}

pdlent::RunConfig resolve(const CommonFlags& f) {
    pdlent::RunConfig cfg;
    if (!f.config.empty()) cfg = pdlent::load_config(f.config);
    if (f.seed) cfg.seed = *f.seed;
    if (f.noisy) cfg.noisy = true;
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& content) {
    pdlent::write_text_file(path, content);
    std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entangled-pair transmission through PDL/PMD fiber channels"};
    app.require_subcommand(1);

    CommonFlags b2b_f, sweep_f, comp_f, trade_f, ent_f;
    std::vector<double> sweep_db{1.25, 2.55, 3.7, 5.1, 6.3};
    int sweep_n = 50;
    double comp_db = 5.1;
    std::vector<double> comp_theta{0, 15, 30, 45, 60, 75, 90, 105, 120, 135, 150, 165, 180};
    std::optional<double> comp_q;
    double trade_db = 5.1;
    int trade_n = 50;
    std::optional<double> trade_q;
    double ent_db = 5.27;
    int ent_n = 200;
    std::optional<double> ent_q;
    std::uint64_t verify_seed = 1;

    auto* b2b = app.add_subcommand("b2b", "back-to-back source density matrix and metrics");
    add_common(b2b, b2b_f, "b2b.csv");

    auto* sweep = app.add_subcommand("sweep-pdl", "concurrence vs emulator PDL over the Poincare sphere");
    add_common(sweep, sweep_f, "sweep_pdl.csv");
    sweep->add_option("--pdl-db", sweep_db, "emulator magnitudes in dB")->delimiter(',')->capture_default_str();
    sweep->add_option("--orientations", sweep_n, "Fibonacci-lattice orientations per magnitude")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* comp = app.add_subcommand("compensate", "nonlocal PDL compensation vs emulator angle");
    add_common(comp, comp_f, "compensate.csv");
    comp->add_option("--pdl-db", comp_db, "emulator magnitude in dB")->capture_default_str();
    comp->add_option("--theta-deg", comp_theta, "emulator angles from the source PDL axis, degrees")
        ->delimiter(',')
        ->capture_default_str();
    comp->add_option("--pmd-q", comp_q, "PMD dephasing weight in channel A (overrides pmd.q)");

    auto* trade = app.add_subcommand("tradeoff", "normalized concurrence/rate over compensator orientations");
    add_common(trade, trade_f, "tradeoff.csv");
    trade->add_option("--pdl-db", trade_db, "channel A (and B) PDL in dB")->capture_default_str();
    trade->add_option("--samples", trade_n, "compensator orientations")->check(CLI::PositiveNumber)->capture_default_str();
    trade->add_option("--pmd-q", trade_q, "PMD dephasing weight in channel A (overrides pmd.q)");

    auto* ent = app.add_subcommand("entropy-feedback", "photon-A linear entropy vs concurrence");
    add_common(ent, ent_f, "entropy_feedback.csv");
    ent->add_option("--pdl-db", ent_db, "channel A (and B) PDL in dB")->capture_default_str();
    ent->add_option("--samples", ent_n, "compensator orientations")->check(CLI::PositiveNumber)->capture_default_str();
    ent->add_option("--pmd-q", ent_q, "PMD dephasing weight in channel A (overrides pmd.q)");

    auto* verify = app.add_subcommand("verify", "run the closed-form vs brute-force property suites");
    verify->add_option("--seed", verify_seed, "sampling seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*b2b) {
            const auto res = pdlent::run_b2b(resolve(b2b_f));
            emit(b2b_f.out, res.matrix_table().to_csv());
            emit(pdlent::companion_path(b2b_f.out, "_metrics.txt"), res.metrics_text());
        } else if (*sweep) {
            emit(sweep_f.out, pdlent::run_sweep_pdl(resolve(sweep_f), sweep_db, sweep_n).to_csv());
        } else if (*comp) {
            const auto cfg = resolve(comp_f);
            emit(comp_f.out, pdlent::run_compensate(cfg, comp_db, comp_theta, comp_q.value_or(cfg.pmd_q)).to_csv());
        } else if (*trade) {
            auto cfg = resolve(trade_f);
            if (trade_q) cfg.pmd_q = *trade_q;
            emit(trade_f.out, pdlent::run_tradeoff(cfg, trade_db, trade_n).to_csv());
        } else if (*ent) {
            auto cfg = resolve(ent_f);
            if (ent_q) cfg.pmd_q = *ent_q;
            const auto res = pdlent::run_entropy_feedback(cfg, ent_db, ent_n);
            emit(ent_f.out, res.sweep.to_csv());
            emit(pdlent::companion_path(ent_f.out, "_reduced.csv"), res.reduced.to_csv());
        } else if (*verify) {
            pdlent::VerifyOptions opts;
            opts.seed = verify_seed;
            const auto results = pdlent::run_verify_suites(opts);
            std::cout << pdlent::format_report(results);
            for (const auto& r : results) {
                if (!r.passed) return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "pdlent: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
