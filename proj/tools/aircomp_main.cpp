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

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int trials = 0; // 0 = keep config value
    std::string out_path;
    int threads = 1;
};

aircomp::RunConfig load_config(const GlobalOptions& options) {
    aircomp::RunConfig config;
    if (!options.config_path.empty()) {
        config = aircomp::RunConfig::parse_file(options.config_path);
    }
    if (options.seed) config.seed = *options.seed;
    if (options.trials > 0) config.channel_draws = options.trials;
    if (!options.out_path.empty()) config.output_path = options.out_path;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Precoder design and link-level Monte Carlo simulation for "
                 "over-the-air computation"};
    app.require_subcommand(1);

    GlobalOptions options;
    app.add_option("--config", options.config_path, "Path to a key = value config file");
    app.add_option("--seed", options.seed, "Master seed (overrides the config)");
    app.add_option("--trials", options.trials, "Channel draws T (overrides the config)");
    app.add_option("--out", options.out_path, "Output file path");
    app.add_option("--threads", options.threads, "Worker threads for trial parallelism")
        ->check(CLI::Range(1, 256));

    auto* design = app.add_subcommand("design", "Design one precoder for a single channel draw "
                                                "and dump its blocks");
    auto* sweep = app.add_subcommand("sweep", "Run the sweep described by the config and emit CSV");
    auto* reproduce =
        app.add_subcommand("reproduce", "Run a built-in study preset (fig2|fig3|fig4|fig5)");
    std::string figure_id;
    reproduce->add_option("figure", figure_id, "Preset id: fig2, fig3, fig4, or fig5")->required();
    for (auto* sub : {design, sweep, reproduce}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const aircomp::RunConfig config = load_config(options);
        if (design->parsed()) {
            const std::string path =
                !config.output_path.empty() ? config.output_path : std::string("precoder.txt");
            aircomp::cmd_design(config, path, std::cout);
        } else if (sweep->parsed()) {
            const std::string path =
                !config.output_path.empty() ? config.output_path : std::string("sweep.csv");
            aircomp::cmd_sweep(config, path, options.threads, std::cerr);
            std::cout << "written = " << path << "\n";
        } else if (reproduce->parsed()) {
            const std::string path =
                !config.output_path.empty() ? config.output_path : (figure_id + ".csv");
            aircomp::cmd_reproduce(figure_id, config.seed, options.trials, path, options.threads,
                                   std::cerr);
            std::cout << "written = " << path << "\n";
        }
    } catch (const aircomp::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const aircomp::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aircomp::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
