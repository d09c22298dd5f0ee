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

#include "aircomp/numerics.hpp"

#include <vector>

namespace aircomp {

/// Per-mode inputs of the relaxed power allocation.
///
/// Mode j couples the j-th data eigenvalue delta_j with the j-th channel
/// eigenvalue lambda_j and the aggregation leverage R_j (squared norm of the
/// j-th column of Q*U). Only modes up to active_limit = min(r, mK) can carry
/// power; lambdas beyond that index are zero.
struct ModeSet {
    RealVector deltas;    ///< length nK, non-increasing, >= 0
    RealVector lambdas;   ///< length mK, non-increasing, >= 0, zero past active_limit
    RealVector leverages; ///< length nK, >= 0
    double budget = 0.0;  ///< total transmit power P0
    int active_limit = 0; ///< min(r, mK)

    void validate() const;
};

/// Optimal squared magnitudes |phi_j|^2 with the Lagrange multiplier that
/// saturates the power budget, plus the surviving active set.
struct Allocation {
    RealVector phi_sq; ///< length mK, entries past min(r, mK) are zero
    double multiplier = 0.0;
    std::vector<int> active_set;
};

/// Solves the relaxed allocation: tries the all-active closed form first and
/// falls back to batch-deactivation water-filling when some candidate power
/// is negative. Throws numerical_error when no mode has delta*lambda*R > 0.
Allocation solve(const ModeSet& modes);

/// MSE surrogate: sum_j<=L delta_j R_j / (1 + delta_j lambda_j phi_sq_j) plus
/// the untouched tail sum_{j>L} delta_j R_j, with L = min(r, mK).
/// Throws validation_error on negative entries or length mismatch.
double objective(const ModeSet& modes, const RealVector& phi_sq);

} // namespace aircomp
