// SPDX-License-Identifier: Apache-2.0
//
// aircomp: precoder design and link-level simulation for over-the-air computation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "aircomp/cli.hpp"

#include "aircomp/errors.hpp"
#include "aircomp/receiver.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace aircomp {

namespace {

// Substream tag mirrored from the simulation loop so `design` dumps the same
// channel the first trial of a run would see.
constexpr std::uint64_t kChannelStream = 0x6368616E6E656C00ULL;

std::string format_sig10(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

std::string format_sig17(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

struct FigurePreset {
    SystemConfig base;
    SweepVariable variable;
    std::vector<double> values;
    std::function<void(SystemConfig&)> coupling;
};

FigurePreset figure_preset(const std::string& figure_id) {
    SystemConfig base; // defaults: n=8, m=2, r=16, K=30, P0=10, SNR=25dB
    FigurePreset preset;
    preset.base = base;
    if (figure_id == "fig2") {
        // Data compression ratio sweep: m from 1 to n, receive array locked to 5m.
        preset.variable = SweepVariable::antennas_per_node;
        preset.values = {1, 2, 3, 4, 5, 6, 7, 8};
        preset.coupling = [](SystemConfig& cfg) { cfg.receive_antennas = 5 * cfg.antennas_per_node; };
    } else if (figure_id == "fig3") {
        // Communication compression ratio sweep: r/mK from 0.067 to 2 at mK = 60.
        preset.variable = SweepVariable::receive_antennas;
        preset.values = {4, 8, 16, 24, 32, 48, 60, 72, 90, 120};
    } else if (figure_id == "fig4") {
        preset.variable = SweepVariable::node_count;
        preset.values = {5, 10, 15, 20, 25, 30, 35, 40};
    } else if (figure_id == "fig5") {
        preset.variable = SweepVariable::snr_db;
        preset.values = {0, 5, 10, 15, 20, 25, 30};
    } else {
        throw validation_error("unknown figure id '" + figure_id +
                               "' (expected fig2, fig3, fig4, or fig5)");
    }
    return preset;
}

} // namespace

void write_sweep_csv(const SweepTable& table, std::ostream& out, std::ostream& warn) {
    out << kSweepCsvHeader << "\n";
    for (const auto& row : table) {
        out << row.sweep_variable << "," << format_sig10(row.sweep_value) << "," << row.method
            << ",";
        if (row.ok) {
            out << format_sig10(row.normalized_mse) << "," << row.trials << ","
                << format_sig10(row.std_error);
        } else {
            out << "," << row.trials << ",";
            warn << "warning: " << row.sweep_variable << "=" << format_sig10(row.sweep_value);
            if (!row.method.empty()) warn << " method=" << row.method;
            warn << ": " << row.note << "\n";
        }
        out << "\n";
    }
}

void write_sweep_csv_file(const SweepTable& table, const std::string& path, std::ostream& warn) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) throw io_error("cannot open output file '" + path + "'");
    write_sweep_csv(table, stream, warn);
    stream.flush();
    if (!stream) throw io_error("failed writing output file '" + path + "'");
}

void cmd_design(const RunConfig& config, const std::string& path, std::ostream& out) {
    config.system.validate();
    if (config.methods.empty()) throw validation_error("design: no method configured");
    const DesignTag tag = config.methods.front();

    const CovariancePair cov = make_covariances(config.system);
    Rng channel_rng(derive_seed(config.seed, {kChannelStream, 0}));
    const ComplexMatrix channel =
        sample_channel(config.system.receive_antennas, config.system.transmit_dim(), channel_rng);
    const std::uint64_t design_seed = derive_seed(config.seed, {fnv1a64("design-cmd"), 0});

    Precoder precoder =
        design_by_tag(tag, config.system, cov.data_cov, cov.noise_cov, channel, design_seed);
    const RealMatrix summation =
        build_summation(config.system.measurements_per_node, config.system.node_count);
    const double predicted =
        precoder.predicted_mse
            ? *precoder.predicted_mse
            : mse_closed_form(precoder.matrix, channel, cov.data_cov, cov.noise_cov, summation);
    const double power = transmit_power(precoder.matrix, cov.data_cov);

    std::ofstream dump(path, std::ios::binary);
    if (!dump) throw io_error("cannot open dump file '" + path + "'");
    dump << "design = " << to_string(precoder.tag) << "\n";
    dump << "n = " << config.system.measurements_per_node << "\n";
    dump << "m = " << config.system.antennas_per_node << "\n";
    dump << "r = " << config.system.receive_antennas << "\n";
    dump << "K = " << config.system.node_count << "\n";
    dump << "seed = " << config.seed << "\n";
    dump << "predicted_mse = " << format_sig17(predicted) << "\n";
    dump << "power = " << format_sig17(power) << "\n";
    for (std::size_t k = 0; k < precoder.blocks.size(); ++k) {
        const ComplexMatrix& block = precoder.blocks[k];
        dump << "block " << k << " rows " << block.rows() << " cols " << block.cols() << "\n";
        for (Eigen::Index i = 0; i < block.rows(); ++i) {
            for (Eigen::Index j = 0; j < block.cols(); ++j) {
                if (j > 0) dump << " ";
                dump << format_sig17(block(i, j).real()) << " " << format_sig17(block(i, j).imag());
            }
            dump << "\n";
        }
    }
    dump.flush();
    if (!dump) throw io_error("failed writing dump file '" + path + "'");

    out << "design = " << to_string(precoder.tag) << "\n";
    out << "predicted_mse = " << format_sig10(predicted) << "\n";
    out << "power = " << format_sig10(power) << "\n";
    out << "written = " << path << "\n";
}

void cmd_sweep(const RunConfig& config, const std::string& path, int workers, std::ostream& warn) {
    if (!config.sweep_variable) {
        throw validation_error("sweep: config must set sweep.variable and sweep.values");
    }
    const SweepTable table =
        run_sweep(config.plan(), *config.sweep_variable, config.sweep_values, workers);
    write_sweep_csv_file(table, path, warn);
}

void cmd_reproduce(const std::string& figure_id, std::uint64_t seed, int trials_override,
                   const std::string& path, int workers, std::ostream& warn) {
    const FigurePreset preset = figure_preset(figure_id);
    TrialPlan plan;
    plan.config = preset.base;
    plan.methods = {DesignTag::proposed, DesignTag::ignore_correlation,
                    DesignTag::comm_then_compute, DesignTag::random};
    plan.master_seed = seed;
    if (trials_override > 0) plan.channel_draws = trials_override;
    const SweepTable table =
        run_sweep(plan, preset.variable, preset.values, workers, preset.coupling);
    write_sweep_csv_file(table, path, warn);
}

} // namespace aircomp
