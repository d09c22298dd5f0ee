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

#include "aircomp/model.hpp"
#include "aircomp/precoder.hpp"
#include "aircomp/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace aircomp {

/// One simulated configuration: T channel draws, Z source/noise draws per
/// channel, the methods to compare on shared draws.
struct TrialPlan {
    SystemConfig config;
    std::vector<DesignTag> methods;
    int channel_draws = 10; ///< T
    int source_draws = 100; ///< Z
    std::uint64_t master_seed = 1;

    void validate() const;
};

/// One aggregated result line: normalized MSE of one method at one sweep
/// value. `ok` is false when the design failed or the sweep value was
/// invalid; `note` then carries the reason and the numeric fields are
/// meaningless.
struct SweepRow {
    std::string sweep_variable;
    double sweep_value = 0.0;
    std::string method;
    bool ok = false;
    double normalized_mse = 0.0;
    int trials = 0; ///< channel draws behind the estimate
    double std_error = 0.0;
    std::string note;
};

using SweepTable = std::vector<SweepRow>;

enum class SweepVariable { antennas_per_node, receive_antennas, node_count, snr_db };

std::string_view to_string(SweepVariable variable);
SweepVariable sweep_variable_from_string(std::string_view name);

/// z = L g with L the lower Cholesky factor of cov and g standard
/// circularly symmetric complex Gaussian, so E[z z^H] = cov.
ComplexVector sample_complex_gaussian(const ComplexMatrix& cov, Rng& rng);

/// Vector of independent standard circularly symmetric entries.
ComplexVector standard_complex_vector(int length, Rng& rng);

/// rows x cols matrix of i.i.d. standard complex Gaussian entries, filled in
/// row-major order.
ComplexMatrix sample_channel(int rows, int cols, Rng& rng);

/// Runs one configuration: per channel draw designs every method once, then
/// accumulates ||s_hat - s||^2 over shared source/noise draws. Returns one
/// row per method with the normalized MSE sum/(nKTZ) and the standard error
/// over per-channel means. Results are identical for any worker count.
SweepTable run_point(const TrialPlan& plan, int workers = 1);

/// Applies each value to the sweep variable (then the optional coupling
/// hook), derives the point seed from (master_seed, variable, value), and
/// concatenates run_point outputs. Invalid values produce a warning row.
SweepTable run_sweep(const TrialPlan& base, SweepVariable variable,
                     const std::vector<double>& values, int workers = 1,
                     const std::function<void(SystemConfig&)>& coupling = {});

} // namespace aircomp
