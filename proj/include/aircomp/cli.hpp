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

#pragma once

#include "aircomp/montecarlo.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aircomp {

/// Effective run configuration: system parameters, trial plan, and the
/// optional sweep spec, parsed from a key=value config file. Unknown keys are
/// rejected; missing keys take the documented defaults.
struct RunConfig {
    SystemConfig system;
    std::vector<DesignTag> methods = {DesignTag::proposed, DesignTag::ignore_correlation,
                                      DesignTag::comm_then_compute, DesignTag::random};
    int channel_draws = 10; ///< T
    int source_draws = 100; ///< Z
    std::uint64_t seed = 1;
    std::optional<SweepVariable> sweep_variable;
    std::vector<double> sweep_values;
    std::string output_path;

    static RunConfig parse_text(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    /// Canonical key=value form; parse_text(serialize()) reproduces the
    /// config exactly (shortest round-trip number formatting).
    std::string serialize() const;

    TrialPlan plan() const;
};

constexpr const char* kSweepCsvHeader = "sweep_var,sweep_value,method,normalized_mse,trials,std_error";

/// RFC-4180-style CSV with '\n' line endings, floats at 10 significant
/// digits, empty numeric fields for failed rows. Failure notes go to `warn`.
void write_sweep_csv(const SweepTable& table, std::ostream& out, std::ostream& warn);

/// Convenience wrapper writing to a file; throws io_error on failure.
void write_sweep_csv_file(const SweepTable& table, const std::string& path, std::ostream& warn);

/// Draws one channel from the seed, designs methods[0], dumps the per-node
/// blocks plus metadata to `path` and prints the predicted MSE on `out`.
void cmd_design(const RunConfig& config, const std::string& path, std::ostream& out);

/// Runs the configured sweep and writes the CSV. `workers` sets the trial
/// parallelism (never affects the output bytes).
void cmd_sweep(const RunConfig& config, const std::string& path, int workers, std::ostream& warn);

/// Built-in sweeps reproducing the four study setups. `trials_override`
/// replaces T when positive.
void cmd_reproduce(const std::string& figure_id, std::uint64_t seed, int trials_override,
                   const std::string& path, int workers, std::ostream& warn);

} // namespace aircomp
