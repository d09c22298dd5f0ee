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

#include "aircomp/model.hpp"

#include "aircomp/errors.hpp"

#include <cmath>
#include <string>

namespace aircomp {

void SystemConfig::validate() const {
    auto require_count = [](int value, const char* name) {
        if (value < 1) {
            throw validation_error("config: " + std::string(name) + " must be >= 1, got " +
                                   std::to_string(value));
        }
    };
    require_count(measurements_per_node, "n");
    require_count(antennas_per_node, "m");
    require_count(receive_antennas, "r");
    require_count(node_count, "K");
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw validation_error("config: p0 must be a positive finite number");
    }
    if (!std::isfinite(snr_db)) {
        throw validation_error("config: snr_db must be finite");
    }
    auto require_rho = [](double value, const char* name) {
        if (!(value >= 0.0 && value < 1.0)) {
            throw validation_error("config: " + std::string(name) + " must lie in [0, 1), got " +
                                   std::to_string(value));
        }
    };
    require_rho(rho_data, "rho_data");
    require_rho(rho_noise, "rho_noise");
}

RealMatrix build_exponential_covariance(int size, double rho, double scale) {
    if (size < 1) throw validation_error("exponential covariance: size must be >= 1");
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw validation_error("exponential covariance: rho must lie in [0, 1), got " +
                               std::to_string(rho));
    }
    if (!(scale > 0.0)) {
        throw validation_error("exponential covariance: scale must be positive");
    }
    RealMatrix cov(size, size);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            cov(i, j) = scale * std::pow(rho, std::abs(i - j));
        }
    }
    return cov;
}

ComplexMatrix build_noise_covariance(const SystemConfig& config) {
    config.validate();
    const int r = config.receive_antennas;
    // Correlation shape 0.5^|a-b| / r has unit trace; the SNR definition
    // 10*log10(P0 / trace) then pins the overall scale.
    const double trace_target = config.total_power / std::pow(10.0, config.snr_db / 10.0);
    const RealMatrix shape =
        build_exponential_covariance(r, config.rho_noise, 1.0 / static_cast<double>(r));
    return (trace_target * shape).cast<cplx>();
}

CovariancePair make_covariances(const SystemConfig& config) {
    config.validate();
    CovariancePair cov;
    cov.data_cov = build_exponential_covariance(config.source_dim(), config.rho_data, 1.0);
    cov.noise_cov = build_noise_covariance(config);
    return cov;
}

RealMatrix build_summation(int measurements_per_node, int node_count) {
    if (measurements_per_node < 1 || node_count < 1) {
        throw validation_error("summation matrix: counts must be >= 1");
    }
    const int n = measurements_per_node;
    RealMatrix q = RealMatrix::Zero(n, n * node_count);
    for (int k = 0; k < node_count; ++k) {
        q.block(0, k * n, n, n).setIdentity();
    }
    return q;
}

RealMatrix build_mask(int antennas_per_node, int measurements_per_node, int node_count) {
    if (antennas_per_node < 1 || measurements_per_node < 1 || node_count < 1) {
        throw validation_error("mask: counts must be >= 1");
    }
    const int m = antennas_per_node;
    const int n = measurements_per_node;
    RealMatrix mask = RealMatrix::Zero(m * node_count, n * node_count);
    for (int k = 0; k < node_count; ++k) {
        mask.block(k * m, k * n, m, n).setOnes();
    }
    return mask;
}

NomographicSpec NomographicSpec::identity(int node_count, int measurements_per_node) {
    NomographicSpec spec;
    auto pass = [](double v) { return v; };
    spec.pre.assign(static_cast<std::size_t>(node_count) * measurements_per_node, pass);
    spec.post.assign(static_cast<std::size_t>(measurements_per_node), pass);
    return spec;
}

NomographicSpec NomographicSpec::weighted_sum(const RealMatrix& weights) {
    NomographicSpec spec;
    const int node_count = static_cast<int>(weights.rows());
    const int n = static_cast<int>(weights.cols());
    spec.pre.reserve(static_cast<std::size_t>(node_count) * n);
    for (int k = 0; k < node_count; ++k) {
        for (int l = 0; l < n; ++l) {
            const double w = weights(k, l);
            spec.pre.push_back([w](double v) { return w * v; });
        }
    }
    spec.post.assign(static_cast<std::size_t>(n), [](double v) { return v; });
    return spec;
}

RealMatrix NomographicSpec::preprocess(const RealMatrix& measurements) const {
    const auto node_count = measurements.rows();
    const auto n = measurements.cols();
    if (pre.size() != static_cast<std::size_t>(node_count * n)) {
        throw validation_error("nomographic: pre-function count does not match K*n measurements");
    }
    RealMatrix out(node_count, n);
    for (Eigen::Index k = 0; k < node_count; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            out(k, l) = pre[static_cast<std::size_t>(k * n + l)](measurements(k, l));
        }
    }
    return out;
}

RealVector apply_nomographic(const NomographicSpec& spec, const RealMatrix& measurements,
                             const RealVector& aggregate) {
    const auto n = measurements.cols();
    if (spec.pre.size() != static_cast<std::size_t>(measurements.rows() * n)) {
        throw validation_error("nomographic: pre-function count does not match K*n measurements");
    }
    if (spec.post.size() != static_cast<std::size_t>(n) || aggregate.size() != n) {
        throw validation_error("nomographic: aggregate length does not match post-function count");
    }
    RealVector out(n);
    for (Eigen::Index l = 0; l < n; ++l) {
        out[l] = spec.post[static_cast<std::size_t>(l)](aggregate[l]);
    }
    return out;
}

} // namespace aircomp
