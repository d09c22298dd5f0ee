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

#include <functional>
#include <vector>

namespace aircomp {

/// All dimensions and scalars of a deployment; root of every run.
///
/// K sensor nodes each measure n values and transmit over m antennas; the
/// aggregator has r receive antennas. Stacked shapes: the source vector x has
/// length n*K, the precoder A is (m*K) x (n*K), the channel H is r x (m*K).
struct SystemConfig {
    int measurements_per_node = 8; ///< n
    int antennas_per_node = 2;     ///< m
    int receive_antennas = 16;     ///< r
    int node_count = 30;           ///< K
    double total_power = 10.0;     ///< P0
    double snr_db = 25.0;
    double rho_data = 0.8;  ///< data correlation base, in [0, 1)
    double rho_noise = 0.5; ///< noise correlation base, in [0, 1)

    int source_dim() const { return measurements_per_node * node_count; }   // nK
    int transmit_dim() const { return antennas_per_node * node_count; }     // mK

    /// Throws validation_error when any count is < 1, power is not positive,
    /// or a correlation base leaves [0, 1).
    void validate() const;
};

/// Data covariance (real SPD, nK x nK) paired with the receiver noise
/// covariance (Hermitian PD, r x r) whose trace realizes the configured SNR.
struct CovariancePair {
    RealMatrix data_cov;
    ComplexMatrix noise_cov;
};

/// Elementwise pre/post-processing functions: the aggregator's target
/// function value is post_l(sum_k pre_{k,l}(measurement_{k,l})).
struct NomographicSpec {
    std::vector<std::function<double(double)>> pre;  ///< K*n entries, node-major
    std::vector<std::function<double(double)>> post; ///< n entries

    static NomographicSpec identity(int node_count, int measurements_per_node);
    static NomographicSpec weighted_sum(const RealMatrix& weights); // K x n

    /// Applies pre_{k,l} elementwise to a K x n measurement matrix.
    RealMatrix preprocess(const RealMatrix& measurements) const;
};

/// Entry (i, j) = scale * rho^|i-j|; symmetric positive definite for rho in [0, 1).
RealMatrix build_exponential_covariance(int size, double rho, double scale);

/// Noise covariance with correlation shape 0.5^|a-b| / r, rescaled so that
/// 10*log10(P0 / trace) equals the configured SNR exactly.
ComplexMatrix build_noise_covariance(const SystemConfig& config);

/// Covariance pair for a configuration: exponential data covariance with base
/// rho_data plus the SNR-calibrated noise covariance.
CovariancePair make_covariances(const SystemConfig& config);

/// Summation matrix Q = [I, ..., I] (n x nK): Q * x = sum of per-node blocks.
RealMatrix build_summation(int measurements_per_node, int node_count);

/// Masking matrix (mK x nK): all-ones m x n diagonal blocks, zeros elsewhere.
RealMatrix build_mask(int antennas_per_node, int measurements_per_node, int node_count);

/// Applies the post-processing functions elementwise to the (estimated)
/// aggregate of pre-processed measurements. `measurements` is K x n and is
/// checked against the function counts.
RealVector apply_nomographic(const NomographicSpec& spec, const RealMatrix& measurements,
                             const RealVector& aggregate);

} // namespace aircomp
