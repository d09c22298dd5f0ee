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

#include "aircomp/montecarlo.hpp"

#include "aircomp/errors.hpp"
#include "aircomp/receiver.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

namespace aircomp {

namespace {

// Substream tags: every random draw is addressed by (master seed, tag,
// indices), never by execution order.
constexpr std::uint64_t kChannelStream = 0x6368616E6E656C00ULL;
constexpr std::uint64_t kSourceStream = 0x736F757263650000ULL;
constexpr std::uint64_t kNoiseStream = 0x6E6F697365000000ULL;
constexpr std::uint64_t kDesignStream = 0x64657369676E0000ULL;

struct TrialOutcome {
    // One entry per method: mean of ||s_hat - s||^2 / (nK) over the Z draws,
    // or an error note when the design failed.
    std::vector<double> channel_mean;
    std::vector<std::optional<std::string>> failure;
};

TrialOutcome run_trial(const TrialPlan& plan, const CovariancePair& cov,
                       const RealMatrix& data_chol, const ComplexMatrix& noise_chol,
                       const RealMatrix& summation, int trial) {
    const SystemConfig& cfg = plan.config;
    const std::size_t method_count = plan.methods.size();

    TrialOutcome outcome;
    outcome.channel_mean.assign(method_count, 0.0);
    outcome.failure.assign(method_count, std::nullopt);

    Rng channel_rng(derive_seed(plan.master_seed, {kChannelStream, static_cast<std::uint64_t>(trial)}));
    const ComplexMatrix channel =
        sample_channel(cfg.receive_antennas, cfg.transmit_dim(), channel_rng);

    struct MethodState {
        ComplexMatrix forward; // H * A
        ComplexMatrix filter;  // W
    };
    std::vector<MethodState> states(method_count);

    for (std::size_t mi = 0; mi < method_count; ++mi) {
        const std::uint64_t design_seed = derive_seed(
            plan.master_seed,
            {kDesignStream, static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(mi)});
        try {
            const Precoder precoder = design_by_tag(plan.methods[mi], cfg, cov.data_cov,
                                                    cov.noise_cov, channel, design_seed);
            states[mi].forward = channel * precoder.matrix;
            states[mi].filter =
                lmmse_matrix(precoder.matrix, channel, cov.data_cov, cov.noise_cov, summation)
                    .filter;
        } catch (const std::exception& e) {
            outcome.failure[mi] = e.what();
        }
    }

    const ComplexMatrix summation_c = summation.cast<cplx>();
    const int source_dim = cfg.source_dim();
    const double norm_scale = 1.0 / (static_cast<double>(source_dim) * plan.source_draws);

    ComplexVector source(source_dim);
    for (int z = 0; z < plan.source_draws; ++z) {
        Rng source_rng(derive_seed(plan.master_seed, {kSourceStream, static_cast<std::uint64_t>(trial),
                                                      static_cast<std::uint64_t>(z)}));
        Rng noise_rng(derive_seed(plan.master_seed, {kNoiseStream, static_cast<std::uint64_t>(trial),
                                                     static_cast<std::uint64_t>(z)}));
        const ComplexVector g = standard_complex_vector(source_dim, source_rng);
        const RealVector g_re = g.real();
        const RealVector g_im = g.imag();
        source.real() = data_chol.triangularView<Eigen::Lower>() * g_re;
        source.imag() = data_chol.triangularView<Eigen::Lower>() * g_im;
        const ComplexVector noise_seed_vec = standard_complex_vector(cfg.receive_antennas, noise_rng);
        const ComplexVector noise = noise_chol.triangularView<Eigen::Lower>() * noise_seed_vec;
        const ComplexVector target = summation_c * source;

        for (std::size_t mi = 0; mi < method_count; ++mi) {
            if (outcome.failure[mi]) continue;
            const ComplexVector received = states[mi].forward * source + noise;
            const ComplexVector estimate = states[mi].filter * received;
            outcome.channel_mean[mi] += (estimate - target).squaredNorm() * norm_scale;
        }
    }
    return outcome;
}

} // namespace

void TrialPlan::validate() const {
    config.validate();
    if (channel_draws < 1) throw validation_error("plan: T must be >= 1");
    if (source_draws < 1) throw validation_error("plan: Z must be >= 1");
    if (methods.empty()) throw validation_error("plan: methods must be non-empty");
}

std::string_view to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::antennas_per_node: return "m";
        case SweepVariable::receive_antennas: return "r";
        case SweepVariable::node_count: return "K";
        case SweepVariable::snr_db: return "snr_db";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(std::string_view name) {
    if (name == "m") return SweepVariable::antennas_per_node;
    if (name == "r") return SweepVariable::receive_antennas;
    if (name == "K") return SweepVariable::node_count;
    if (name == "snr_db") return SweepVariable::snr_db;
    throw validation_error("unknown sweep variable '" + std::string(name) + "'");
}

ComplexVector standard_complex_vector(int length, Rng& rng) {
    ComplexVector v(length);
    for (int i = 0; i < length; ++i) v[i] = rng.complex_normal();
    return v;
}

ComplexVector sample_complex_gaussian(const ComplexMatrix& cov, Rng& rng) {
    const ComplexMatrix factor = cholesky_lower(cov, "covariance");
    return factor.triangularView<Eigen::Lower>() *
           standard_complex_vector(static_cast<int>(cov.rows()), rng);
}

ComplexMatrix sample_channel(int rows, int cols, Rng& rng) {
    if (rows < 1 || cols < 1) throw validation_error("sample_channel: dims must be >= 1");
    ComplexMatrix channel(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) channel(i, j) = rng.complex_normal();
    }
    return channel;
}

SweepTable run_point(const TrialPlan& plan, int workers) {
    plan.validate();
    if (workers < 1) workers = 1;

    const CovariancePair cov = make_covariances(plan.config);
    const RealMatrix data_chol = cholesky_lower(cov.data_cov, "K");
    const ComplexMatrix noise_chol = cholesky_lower(cov.noise_cov, "S");
    const RealMatrix summation =
        build_summation(plan.config.measurements_per_node, plan.config.node_count);

    const int trial_count = plan.channel_draws;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trial_count));

    std::atomic<int> next_trial{0};
    auto worker_loop = [&] {
        for (int t = next_trial.fetch_add(1); t < trial_count; t = next_trial.fetch_add(1)) {
            outcomes[static_cast<std::size_t>(t)] =
                run_trial(plan, cov, data_chol, noise_chol, summation, t);
        }
    };
    std::vector<std::thread> pool;
    const int spawned = std::min(workers, trial_count) - 1;
    pool.reserve(static_cast<std::size_t>(std::max(spawned, 0)));
    for (int i = 0; i < spawned; ++i) pool.emplace_back(worker_loop);
    worker_loop();
    for (auto& thread : pool) thread.join();

    // Deterministic reduction in trial-index order.
    SweepTable table;
    table.reserve(plan.methods.size());
    for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
        SweepRow row;
        row.method = std::string(to_string(plan.methods[mi]));

        std::string first_failure;
        for (const auto& outcome : outcomes) {
            if (outcome.failure[mi] && first_failure.empty()) first_failure = *outcome.failure[mi];
        }
        if (!first_failure.empty()) {
            row.ok = false;
            row.note = first_failure;
            table.push_back(std::move(row));
            continue;
        }

        double mean = 0.0;
        for (const auto& outcome : outcomes) mean += outcome.channel_mean[mi];
        mean /= trial_count;

        double variance = 0.0;
        for (const auto& outcome : outcomes) {
            const double dev = outcome.channel_mean[mi] - mean;
            variance += dev * dev;
        }
        row.ok = true;
        row.normalized_mse = mean;
        row.trials = trial_count;
        row.std_error =
            trial_count > 1 ? std::sqrt(variance / (static_cast<double>(trial_count) *
                                                    (trial_count - 1)))
                            : 0.0;
        table.push_back(std::move(row));
    }
    return table;
}

SweepTable run_sweep(const TrialPlan& base, SweepVariable variable,
                     const std::vector<double>& values, int workers,
                     const std::function<void(SystemConfig&)>& coupling) {
    const std::string variable_name(to_string(variable));
    SweepTable table;

    for (const double value : values) {
        TrialPlan point = base;
        point.master_seed = derive_seed(
            base.master_seed, {fnv1a64(variable_name), std::bit_cast<std::uint64_t>(value)});

        std::string invalid_reason;
        const bool integral = value == std::floor(value) && std::isfinite(value);
        switch (variable) {
            case SweepVariable::antennas_per_node:
                if (!integral || value < 1) invalid_reason = "m must be a positive integer";
                else point.config.antennas_per_node = static_cast<int>(value);
                break;
            case SweepVariable::receive_antennas:
                if (!integral || value < 1) invalid_reason = "r must be a positive integer";
                else point.config.receive_antennas = static_cast<int>(value);
                break;
            case SweepVariable::node_count:
                if (!integral || value < 1) invalid_reason = "K must be a positive integer";
                else point.config.node_count = static_cast<int>(value);
                break;
            case SweepVariable::snr_db:
                if (!std::isfinite(value)) invalid_reason = "snr_db must be finite";
                else point.config.snr_db = value;
                break;
        }
        if (invalid_reason.empty() && coupling) coupling(point.config);
        if (invalid_reason.empty()) {
            try {
                point.config.validate();
            } catch (const validation_error& e) {
                invalid_reason = e.what();
            }
        }

        if (!invalid_reason.empty()) {
            SweepRow warning;
            warning.sweep_variable = variable_name;
            warning.sweep_value = value;
            warning.ok = false;
            warning.note = "skipped: " + invalid_reason;
            table.push_back(std::move(warning));
            continue;
        }

        SweepTable point_rows = run_point(point, workers);
        for (auto& row : point_rows) {
            row.sweep_variable = variable_name;
            row.sweep_value = value;
            table.push_back(std::move(row));
        }
    }
    return table;
}

} // namespace aircomp
