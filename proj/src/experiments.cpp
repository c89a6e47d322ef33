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

#include "pdlent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pdlent/compensation.hpp"
#include "pdlent/errors.hpp"
#include "pdlent/theory.hpp"

namespace pdlent {
namespace {

enum class Stream : std::uint64_t { B2B = 1, Sweep, CompensateSearch, CompensateUncomp, CompensateVerify, Tradeoff, Entropy };

std::uint64_t row_seed(const RunConfig& cfg, Stream s, std::size_t row) {
    return derive_seed(cfg.seed, static_cast<std::uint64_t>(s), row);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a number, got '" + v + "'");
    }
    if (used != v.size()) throw std::invalid_argument(where + ": trailing characters in '" + v + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& v, const std::string& where) {
    std::size_t used = 0;
    std::uint64_t x = 0;
    try {
        x = std::stoull(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected an unsigned integer, got '" + v + "'");
    }
    if (used != v.size() || v.front() == '-') throw std::invalid_argument(where + ": bad unsigned integer '" + v + "'");
    return x;
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument(where + ": expected true/false, got '" + v + "'");
}

/// Quantum state after tomography in noisy mode, exact state otherwise.
DensityMatrix4 observed_state(const RunConfig& cfg, const ChannelOutcome& out, Stream s, std::size_t row) {
    if (!cfg.noisy) return out.rho;
    return tomograph(out, settings_36(), count_source(cfg), cfg.detector, cfg.pulses, row_seed(cfg, s, row));
}

void self_check(bool ok, const std::string& what, std::size_t row) {
    if (!ok) throw std::logic_error(what + " identity violated at row " + std::to_string(row));
}

const StokesVec kAxisH{0, 0, 1};

}  // namespace

void RunConfig::validate() const {
    if (!(c_b2b > 0.5 && c_b2b <= 1.0)) throw DomainError("config: source.c_b2b outside (1/2, 1]");
    if (!(hh_vv_ratio >= 1.0)) throw DomainError("config: source.hh_vv_ratio must be >= 1");
    count_source(*this).validate();  // also rejects infeasible calibration targets
    detector.validate();
    if (pulses == 0) throw DomainError("config: tomo.pulses must be >= 1");
    PmdElement(pmd_q, pmd_axis);
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(lineno);
        if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "source.c_b2b") {
            cfg.c_b2b = parse_double(val, where);
        } else if (key == "source.hh_vv_ratio") {
            cfg.hh_vv_ratio = parse_double(val, where);
        } else if (key == "source.mu") {
            cfg.mu = parse_double(val, where);
        } else if (key == "source.pulse_rate_hz") {
            cfg.pulse_rate_hz = parse_double(val, where);
        } else if (key == "det.efficiency") {
            cfg.detector.efficiency = parse_double(val, where);
        } else if (key == "det.dark_prob") {
            cfg.detector.dark_prob = parse_double(val, where);
        } else if (key == "det.accidental_floor") {
            cfg.detector.accidental_floor = parse_double(val, where);
        } else if (key == "tomo.pulses") {
            cfg.pulses = parse_u64(val, where);
        } else if (key == "run.seed") {
            cfg.seed = parse_u64(val, where);
        } else if (key == "run.noisy") {
            cfg.noisy = parse_bool(val, where);
        } else if (key == "pmd.q") {
            cfg.pmd_q = parse_double(val, where);
        } else if (key == "pmd.axis") {
            std::array<double, 3> c{};
            std::stringstream ss(val);
            std::string part;
            int n = 0;
            while (std::getline(ss, part, ',')) {
                if (n == 3) throw std::invalid_argument(where + ": pmd.axis takes three components");
                c[static_cast<std::size_t>(n++)] = parse_double(trim(part), where);
            }
            if (n != 3) throw std::invalid_argument(where + ": pmd.axis takes three components");
            cfg.pmd_axis = StokesVec{c[0], c[1], c[2]}.normalized();
        } else {
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse_config(in, std::move(base));
}

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("CsvTable: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) throw std::out_of_range("CsvTable: no column " + name);
    return static_cast<std::size_t>(it - header_.begin());
}

double CsvTable::value(std::size_t row, const std::string& name) const {
    return std::stod(rows_.at(row).at(column(name)));
}

std::string CsvTable::to_csv() const {
    auto join = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t k = 0; k < cells.size(); ++k) s += (k ? "," : "") + cells[k];
        return s + "\n";
    };
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for " + path);
}

std::string companion_path(const std::string& out, const std::string& suffix) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out.substr(0, dot) : out) + suffix;
}

DensityMatrix4 experiment_base_state(const RunConfig& cfg) {
    if (cfg.pmd_q > 0.0) return bell_state(BellKind::PhiPlus);
    return werner(calibrate_source(cfg.c_b2b, cfg.hh_vv_ratio).werner_v);
}

PdlElement virtual_source_pdl(const RunConfig& cfg) { return calibrate_source(cfg.c_b2b, cfg.hh_vv_ratio).source_pdl; }

SourceModel count_source(const RunConfig& cfg) {
    SourceModel m = calibrate_source(cfg.c_b2b, cfg.hh_vv_ratio);
    m.mu = cfg.mu;
    m.pulse_rate_hz = cfg.pulse_rate_hz;
    return m;
}

ChannelSpec channel_a_spec(const RunConfig& cfg, const PdlElement& aggregate) {
    ChannelSpec spec{aggregate, {}};
    if (cfg.pmd_q > 0.0) spec.pmd = PmdElement(cfg.pmd_q, cfg.pmd_axis);
    return spec;
}

CsvTable B2BResult::matrix_table() const {
    CsvTable t({"i", "j", "re", "im"});
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) t.add_row({double(i), double(j), rho(i, j).real(), rho(i, j).imag()});
    }
    return t;
}

std::string B2BResult::metrics_text() const {
    return "concurrence=" + format_number(concurrence) + "\npurity=" + format_number(purity) +
           "\nfidelity=" + format_number(fidelity) + "\nhh_vv_ratio=" + format_number(hh_vv_ratio) + "\n";
}

B2BResult run_b2b(const RunConfig& cfg) {
    cfg.validate();
    const ChannelOutcome out = source_state(count_source(cfg));
    const DensityMatrix4 rho = observed_state(cfg, out, Stream::B2B, 0);
    return {rho, concurrence(rho), purity(rho), fidelity_to_pure(rho, bell_vector(BellKind::PhiPlus)),
            rho(0, 0).real() / rho(3, 3).real()};
}

CsvTable run_sweep_pdl(const RunConfig& cfg, const std::vector<double>& pdl_db_list, int orientations) {
    cfg.validate();
    const DensityMatrix4 base = werner(calibrate_source(cfg.c_b2b, cfg.hh_vv_ratio).werner_v);
    const double c_source = concurrence(base);
    const PdlElement source = virtual_source_pdl(cfg);
    // Source PDL mapped through the Phi+ correlation (1, -1, 1).
    const StokesVec mapped{source.axis().s1, -source.axis().s2, source.axis().s3};
    const auto lattice = fibonacci_sphere(orientations);

    CsvTable table({"pdl_db_emulator", "ax1", "ax2", "ax3", "aggregate_pdl_db", "kappa", "concurrence", "purity", "rate"});
    std::size_t row = 0;
    for (double db : pdl_db_list) {
        for (const StokesVec& axis : lattice) {
            const PdlElement emulator = PdlElement::from_db(db, axis);
            const PdlElement aggregate = concat_pdl(source, emulator);
            const Mat2 op = pdl_operator(emulator) * pdl_operator(source);
            const ChannelOutcome out = apply_local(base, op, pauli(0));
            const DensityMatrix4 rho = observed_state(cfg, out, Stream::Sweep, row);
            const double c = concurrence(rho);
            if (!cfg.noisy) {
                self_check(std::abs(c - c_source / std::cosh(aggregate.gamma())) <= 1e-6, "orientation-independent concurrence", row);
            }
            const StokesVec& e = emulator.axis();
            table.add_row({db, e.s1, e.s2, e.s3, aggregate.db(), e.dot(mapped), c, purity(rho), out.rate});
            ++row;
        }
    }
    return table;
}

CsvTable run_compensate(const RunConfig& cfg_in, double pdl_db, const std::vector<double>& theta_deg, double pmd_q) {
    RunConfig cfg = cfg_in;
    cfg.pmd_q = pmd_q;
    cfg.validate();
    const DensityMatrix4 base = experiment_base_state(cfg);
    const PdlElement source = virtual_source_pdl(cfg);
    const double c0 = concurrence(apply_channels(base, channel_a_spec(cfg, {}), {}).rho);

    CsvTable table({"theta", "aggregate_pdl_db", "c_uncompensated", "c_compensated", "gammaB_db", "axB1", "axB2", "axB3",
                    "rate_uncomp", "rate_comp"});
    for (std::size_t row = 0; row < theta_deg.size(); ++row) {
        const double th = theta_deg[row] * std::numbers::pi / 180.0;
        const PdlElement emulator = PdlElement::from_db(pdl_db, StokesVec{std::sin(th), 0.0, std::cos(th)});
        const PdlElement aggregate = concat_pdl(source, emulator);
        const ChannelSpec chan_a = channel_a_spec(cfg, aggregate);

        const ChannelOutcome unc = apply_channels(base, chan_a, {});
        const double c_unc = concurrence(observed_state(cfg, unc, Stream::CompensateUncomp, row));
        if (!cfg.noisy) {
            self_check(std::abs(unc.rate * c_unc - average_entanglement(c0, aggregate.gamma(), 0.0)) <= 1e-9,
                       "average entanglement", row);
        }

        SearchConfig search = SearchConfig::defaults_for(aggregate.gamma());
        search.noisy = cfg.noisy;
        search.seed = row_seed(cfg, Stream::CompensateSearch, row);
        search.noise = TomographyNoise{count_source(cfg), cfg.detector, cfg.pulses, settings_36()};
        const SearchResult res = optimize_compensator(chan_a, base, search);

        const ChannelOutcome comp = apply_channels(base, chan_a, ChannelSpec{res.best, {}});
        const double c_comp =
            cfg.noisy ? concurrence(observed_state(cfg, comp, Stream::CompensateVerify, row)) : res.best_concurrence;
        const StokesVec& b = res.best.axis();
        table.add_row({theta_deg[row], aggregate.db(), c_unc, c_comp, res.best.db(), b.s1, b.s2, b.s3, unc.rate, comp.rate});
    }
    return table;
}

CsvTable run_tradeoff(const RunConfig& cfg, double pdl_db, int orient_samples) {
    cfg.validate();
    const DensityMatrix4 base = experiment_base_state(cfg);
    const PdlElement pdl_a = PdlElement::from_db(pdl_db, kAxisH);
    const ChannelOutcome zero = apply_channels(base, channel_a_spec(cfg, {}), {});
    const double c0 = concurrence(zero.rho);
    if (!(c0 > 0.0)) throw DomainError("tradeoff: baseline state is separable, nothing to normalize");
    const CorrelationT t = correlation_of(zero.rho);

    CsvTable table({"kappa", "concurrence_norm", "rate_norm", "avg_entanglement"});
    std::size_t row = 0;
    for (const StokesVec& axis : fibonacci_sphere(orient_samples)) {
        const PdlElement pdl_b(pdl_a.gamma(), axis);
        const ChannelOutcome out = apply_channels(base, channel_a_spec(cfg, pdl_a), ChannelSpec{pdl_b, {}});
        const double c_norm = concurrence(observed_state(cfg, out, Stream::Tradeoff, row)) / c0;
        const double rate_norm = out.rate / zero.rate;
        const double avg = c_norm * rate_norm;
        if (!cfg.noisy) {
            self_check(std::abs(avg - std::exp(-2.0 * pdl_a.gamma())) <= 1e-9, "average entanglement", row);
        }
        table.add_row({kappa(t, pdl_a.axis(), axis).value(), c_norm, rate_norm, avg});
        ++row;
    }
    return table;
}

EntropyFeedbackResult run_entropy_feedback(const RunConfig& cfg, double pdl_db, int orient_samples) {
    cfg.validate();
    const DensityMatrix4 base = experiment_base_state(cfg);
    const PdlElement pdl_a = PdlElement::from_db(pdl_db, kAxisH);
    const CorrelationT t = correlation_of(apply_channels(base, channel_a_spec(cfg, {}), {}).rho);

    EntropyFeedbackResult res{CsvTable({"s_linear_A", "concurrence", "kappa"}),
                              CsvTable({"label", "row", "s_linear_A", "i", "j", "re", "im"})};
    std::vector<QubitState> reduced;
    std::vector<double> entropy;
    std::size_t row = 0;
    for (const StokesVec& axis : fibonacci_sphere(orient_samples)) {
        const PdlElement pdl_b(pdl_a.gamma(), axis);
        const ChannelOutcome out = apply_channels(base, channel_a_spec(cfg, pdl_a), ChannelSpec{pdl_b, {}});
        const DensityMatrix4 rho = observed_state(cfg, out, Stream::Entropy, row);
        reduced.push_back(reduced_qubit(rho, Qubit::A));
        entropy.push_back(linear_entropy(reduced.back()));
        res.sweep.add_row({entropy.back(), concurrence(rho), kappa(t, pdl_a.axis(), axis).value()});
        ++row;
    }

    std::vector<std::size_t> order(entropy.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return entropy[a] < entropy[b]; });
    const std::array<std::pair<const char*, std::size_t>, 3> picks = {
        {{"min", order.front()}, {"median", order[order.size() / 2]}, {"max", order.back()}}};
    for (const auto& [label, idx] : picks) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                res.reduced.add_row({label, std::to_string(idx), format_number(entropy[idx]), std::to_string(i),
                                     std::to_string(j), format_number(reduced[idx](i, j).real()),
                                     format_number(reduced[idx](i, j).imag())});
            }
        }
    }
    return res;
}

}  // namespace pdlent
