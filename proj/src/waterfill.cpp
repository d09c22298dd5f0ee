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

#include "aircomp/waterfill.hpp"

#include "aircomp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aircomp {

namespace {

void require_sorted_nonnegative(const RealVector& v, const char* name) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (!(v[j] >= 0.0) || !std::isfinite(v[j])) {
            throw validation_error("mode set: " + std::string(name) +
                                   " must be finite and nonnegative");
        }
        if (j > 0 && v[j] > v[j - 1] + 1e-12 * std::max(1.0, v[j - 1])) {
            throw validation_error("mode set: " + std::string(name) + " must be non-increasing");
        }
    }
}

// Modes that can actually carry power: index below the limit and a strictly
// positive delta*lambda*leverage product.
int usable_limit(const ModeSet& modes) {
    const int mode_count = static_cast<int>(modes.lambdas.size());
    const int source_count = static_cast<int>(modes.deltas.size());
    return std::min({modes.active_limit, mode_count, source_count});
}

} // namespace

void ModeSet::validate() const {
    if (deltas.size() == 0 || lambdas.size() == 0) {
        throw validation_error("mode set: deltas and lambdas must be non-empty");
    }
    if (leverages.size() != deltas.size()) {
        throw validation_error("mode set: leverages must pair with deltas");
    }
    require_sorted_nonnegative(deltas, "deltas");
    require_sorted_nonnegative(lambdas, "lambdas");
    for (Eigen::Index j = 0; j < leverages.size(); ++j) {
        if (!(leverages[j] >= 0.0) || !std::isfinite(leverages[j])) {
            throw validation_error("mode set: leverages must be finite and nonnegative");
        }
    }
    if (!(budget > 0.0) || !std::isfinite(budget)) {
        throw validation_error("mode set: budget must be positive and finite");
    }
    if (active_limit < 0 || active_limit > lambdas.size()) {
        throw validation_error("mode set: active_limit out of range");
    }
    for (Eigen::Index j = active_limit; j < lambdas.size(); ++j) {
        if (std::abs(lambdas[j]) > 1e-10) {
            throw validation_error("mode set: lambdas must vanish past active_limit");
        }
    }
}

Allocation solve(const ModeSet& modes) {
    modes.validate();
    const int mode_count = static_cast<int>(modes.lambdas.size());
    const int limit = usable_limit(modes);

    std::vector<int> active;
    active.reserve(static_cast<std::size_t>(limit));
    for (int j = 0; j < limit; ++j) {
        if (modes.deltas[j] * modes.lambdas[j] * modes.leverages[j] > 0.0) active.push_back(j);
    }
    if (active.empty()) {
        throw numerical_error("waterfill: no usable mode (all delta*lambda*leverage products vanish)");
    }

    Allocation out;
    out.phi_sq = RealVector::Zero(mode_count);
    double inv_sqrt_mu = 0.0;

    // Each round solves the multiplier over the surviving set and drops every
    // mode whose candidate power comes out negative. The set shrinks strictly,
    // so the loop ends within mode_count rounds.
    for (int round = 0; round <= mode_count; ++round) {
        double budget_term = modes.budget;
        double gain_term = 0.0;
        for (const int j : active) {
            budget_term += 1.0 / modes.lambdas[j];
            gain_term += std::sqrt(modes.deltas[j] * modes.leverages[j] / modes.lambdas[j]);
        }
        inv_sqrt_mu = budget_term / gain_term;

        std::vector<int> survivors;
        survivors.reserve(active.size());
        bool all_nonnegative = true;
        for (const int j : active) {
            const double coupling = modes.deltas[j] * modes.lambdas[j];
            const double candidate =
                (std::sqrt(coupling * modes.leverages[j]) * inv_sqrt_mu - 1.0) / coupling;
            if (candidate < 0.0) {
                all_nonnegative = false;
            } else {
                survivors.push_back(j);
                out.phi_sq[j] = candidate;
            }
        }
        if (all_nonnegative) break;

        for (const int j : active) out.phi_sq[j] = 0.0;
        active = std::move(survivors);
        if (active.empty()) {
            throw numerical_error("waterfill: active set collapsed before satisfying the budget");
        }
    }

    out.multiplier = 1.0 / (inv_sqrt_mu * inv_sqrt_mu);
    out.active_set = std::move(active);
    return out;
}

double objective(const ModeSet& modes, const RealVector& phi_sq) {
    modes.validate();
    if (phi_sq.size() != modes.lambdas.size()) {
        throw validation_error("objective: phi_sq length must match lambdas");
    }
    for (Eigen::Index j = 0; j < phi_sq.size(); ++j) {
        if (!(phi_sq[j] >= 0.0) || !std::isfinite(phi_sq[j])) {
            throw validation_error("objective: phi_sq entries must be finite and nonnegative");
        }
    }
    const int limit = usable_limit(modes);
    double value = 0.0;
    for (int j = 0; j < limit; ++j) {
        const double prior = modes.deltas[j] * modes.leverages[j];
        value += prior / (1.0 + modes.deltas[j] * modes.lambdas[j] * phi_sq[j]);
    }
    for (Eigen::Index j = limit; j < modes.deltas.size(); ++j) {
        value += modes.deltas[j] * modes.leverages[j];
    }
    return value;
}

} // namespace aircomp
