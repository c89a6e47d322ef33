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

// Experiment runner behind the `pdlent` command line: configuration,
// seeding and CSV emission for each figure dataset.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdlent/channels.hpp"
#include "pdlent/instrument.hpp"
#include "pdlent/qmath.hpp"

namespace pdlent {

struct RunConfig {
    double c_b2b = 0.925;
    double hh_vv_ratio = 1.38;
    double mu = 0.01;
    double pulse_rate_hz = 5e7;
    DetectorModel detector{};
    std::uint64_t pulses = 1'000'000;  ///< per tomography setting
    std::uint64_t seed = 1;
    bool noisy = false;
    double pmd_q = 0.0;
    StokesVec pmd_axis{0, 0, 1};

    void validate() const;
};

/// Flat `key = value` text; '#' starts a comment. Keys: source.c_b2b,
/// source.hh_vv_ratio, source.mu, source.pulse_rate_hz, det.efficiency,
/// det.dark_prob, det.accidental_floor, tomo.pulses, run.seed, run.noisy,
/// pmd.q, pmd.axis (three comma-separated components).
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// CSV with a header row; numbers printed with 9 significant digits.
class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> cells);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::size_t column(const std::string& name) const;
    double value(std::size_t row, const std::string& name) const;
    std::string to_csv() const;

   private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double x);

/// Writes `content` to `path`; throws std::runtime_error naming the path.
void write_text_file(const std::string& path, const std::string& content);
/// "out/run.csv" + "_metrics.txt" -> "out/run_metrics.txt".
std::string companion_path(const std::string& out, const std::string& suffix);

// Experiment state model -------------------------------------------------

/// Werner state of the calibrated source (the virtual source PDL is kept out
/// and concatenated into channel A), or ideal Phi+ when PMD is configured
/// (the PMD element turns it into the rank-two decohered state).
DensityMatrix4 experiment_base_state(const RunConfig& cfg);
/// Virtual source PDL, H-aligned, from the HH/VV ratio.
PdlElement virtual_source_pdl(const RunConfig& cfg);
/// Calibrated source with the configured pair and pulse rates.
SourceModel count_source(const RunConfig& cfg);
/// Channel A: aggregate PDL plus the configured PMD element, if any.
ChannelSpec channel_a_spec(const RunConfig& cfg, const PdlElement& aggregate);

// Commands ---------------------------------------------------------------

struct B2BResult {
    DensityMatrix4 rho;
    double concurrence;
    double purity;
    double fidelity;
    double hh_vv_ratio;

    CsvTable matrix_table() const;
    std::string metrics_text() const;
};

B2BResult run_b2b(const RunConfig& cfg);

/// Columns: pdl_db_emulator, ax1, ax2, ax3, aggregate_pdl_db, kappa,
/// concurrence, purity, rate.
CsvTable run_sweep_pdl(const RunConfig& cfg, const std::vector<double>& pdl_db_list, int orientations);

/// Columns: theta (degrees), aggregate_pdl_db, c_uncompensated,
/// c_compensated, gammaB_db, axB1, axB2, axB3, rate_uncomp, rate_comp.
CsvTable run_compensate(const RunConfig& cfg, double pdl_db, const std::vector<double>& theta_deg, double pmd_q);

/// Columns: kappa, concurrence_norm, rate_norm, avg_entanglement.
CsvTable run_tradeoff(const RunConfig& cfg, double pdl_db, int orient_samples);

struct EntropyFeedbackResult {
    CsvTable sweep;    ///< s_linear_A, concurrence, kappa
    CsvTable reduced;  ///< label, row, s_linear_A, i, j, re, im
};

EntropyFeedbackResult run_entropy_feedback(const RunConfig& cfg, double pdl_db, int orient_samples);

}  // namespace pdlent
