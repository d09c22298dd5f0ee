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

#include "aircomp/precoder.hpp"

#include "aircomp/errors.hpp"
#include "aircomp/receiver.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aircomp {

namespace {

struct MaskShape {
    int antennas_per_node = 0;
    int measurements_per_node = 0;
    int node_count = 0;
};

// A masking matrix encodes its own block shape: the run of ones in the first
// row gives n, in the first column gives m. Everything else must match the
// canonical pattern exactly.
MaskShape infer_mask_shape(const RealMatrix& mask) {
    const Eigen::Index rows = mask.rows();
    const Eigen::Index cols = mask.cols();
    if (rows < 1 || cols < 1) throw validation_error("mask: empty matrix");

    MaskShape shape;
    Eigen::Index n = 0;
    while (n < cols && mask(0, n) == 1.0) ++n;
    Eigen::Index m = 0;
    while (m < rows && mask(m, 0) == 1.0) ++m;
    if (n == 0 || m == 0 || rows % m != 0 || cols % n != 0 || rows / m != cols / n) {
        throw validation_error("mask: not a block masking matrix");
    }
    shape.antennas_per_node = static_cast<int>(m);
    shape.measurements_per_node = static_cast<int>(n);
    shape.node_count = static_cast<int>(rows / m);

    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double expected = (i / m == j / n) ? 1.0 : 0.0;
            if (mask(i, j) != expected) {
                throw validation_error("mask: entries do not form all-ones diagonal blocks");
            }
        }
    }
    return shape;
}

std::vector<ComplexMatrix> extract_blocks(const ComplexMatrix& matrix, const MaskShape& shape) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.node_count));
    for (int k = 0; k < shape.node_count; ++k) {
        blocks.push_back(matrix.block(k * shape.antennas_per_node, k * shape.measurements_per_node,
                                      shape.antennas_per_node, shape.measurements_per_node));
    }
    return blocks;
}

// Block-diagonal truncation of the data covariance: per-node n x n blocks
// kept, cross-node correlation dropped.
RealMatrix truncate_to_blocks(const RealMatrix& data_cov, int measurements_per_node,
                              int node_count) {
    RealMatrix truncated = RealMatrix::Zero(data_cov.rows(), data_cov.cols());
    for (int k = 0; k < node_count; ++k) {
        const int offset = k * measurements_per_node;
        truncated.block(offset, offset, measurements_per_node, measurements_per_node) =
            data_cov.block(offset, offset, measurements_per_node, measurements_per_node);
    }
    return truncated;
}

void check_design_inputs(const SystemConfig& config, const RealMatrix& data_cov,
                         const ComplexMatrix& noise_cov, const ComplexMatrix& channel) {
    config.validate();
    if (data_cov.rows() != config.source_dim() || data_cov.cols() != config.source_dim()) {
        throw validation_error("design: data covariance must be nK x nK");
    }
    if (channel.rows() != config.receive_antennas || channel.cols() != config.transmit_dim()) {
        throw validation_error("design: channel must be r x mK");
    }
    if (noise_cov.rows() != config.receive_antennas || noise_cov.cols() != config.receive_antennas) {
        throw validation_error("design: noise covariance must be r x r");
    }
}

Precoder finish_design(Precoder precoder, DesignTag tag, const SystemConfig& config,
                       const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                       const ComplexMatrix& channel) {
    precoder.tag = tag;
    const RealMatrix summation =
        build_summation(config.measurements_per_node, config.node_count);
    precoder.predicted_mse =
        mse_closed_form(precoder.matrix, channel, data_cov, noise_cov, summation);
    return precoder;
}

} // namespace

std::string_view to_string(DesignTag tag) {
    switch (tag) {
        case DesignTag::proposed: return "proposed";
        case DesignTag::ignore_correlation: return "ignore_correlation";
        case DesignTag::comm_then_compute: return "comm_then_compute";
        case DesignTag::random: return "random";
    }
    return "unknown";
}

DesignTag design_tag_from_string(std::string_view name) {
    if (name == "proposed") return DesignTag::proposed;
    if (name == "ignore_correlation") return DesignTag::ignore_correlation;
    if (name == "comm_then_compute") return DesignTag::comm_then_compute;
    if (name == "random") return DesignTag::random;
    throw validation_error("unknown design method '" + std::string(name) + "'");
}

double transmit_power(const ComplexMatrix& precoder, const RealMatrix& data_cov) {
    if (precoder.cols() != data_cov.rows() || data_cov.rows() != data_cov.cols()) {
        throw validation_error("transmit_power: data covariance must be square and match precoder");
    }
    const ComplexMatrix scaled = precoder * data_cov.cast<cplx>() * precoder.adjoint();
    return scaled.trace().real();
}

SpectralCache build_spectral_cache(const RealMatrix& data_cov, const ComplexMatrix& channel,
                                   const ComplexMatrix& noise_cov, const RealMatrix& summation) {
    if (summation.cols() != data_cov.rows()) {
        throw validation_error("spectral cache: summation matrix columns must match data covariance");
    }
    if (noise_cov.rows() != channel.rows()) {
        throw validation_error("spectral cache: noise covariance must match channel rows");
    }

    SpectralCache cache;
    const RealEigenPair data_eig = hermitian_eig(data_cov);
    cache.data_basis = data_eig.vectors;
    cache.data_gains = data_eig.values;

    ComplexMatrix whitened_gram = channel.adjoint() * hpd_solve(noise_cov, channel, "S");
    whitened_gram = 0.5 * (whitened_gram + whitened_gram.adjoint());
    const ComplexEigenPair channel_eig = hermitian_eig(whitened_gram);
    cache.channel_basis = channel_eig.vectors;
    cache.channel_gains = channel_eig.values;

    const int transmit_dim = static_cast<int>(channel.cols());
    cache.active_limit = std::min(static_cast<int>(channel.rows()), transmit_dim);
    // rank(H^H S^-1 H) <= r, so the trailing spectrum is round-off; pin it to zero.
    for (Eigen::Index j = cache.active_limit; j < cache.channel_gains.size(); ++j) {
        cache.channel_gains[j] = 0.0;
    }

    cache.aggregated_basis = summation * cache.data_basis;
    cache.leverages = cache.aggregated_basis.colwise().squaredNorm();
    return cache;
}

ComplexMatrix design_relaxed(const SpectralCache& cache, double total_power) {
    const Eigen::Index source_dim = cache.data_basis.rows();
    const Eigen::Index transmit_dim = cache.channel_basis.rows();

    ModeSet modes;
    modes.deltas = cache.data_gains;
    modes.lambdas = cache.channel_gains;
    modes.leverages = cache.leverages;
    modes.budget = total_power;
    modes.active_limit = cache.active_limit;
    const Allocation allocation = solve(modes);

    const Eigen::Index diag_len = std::min(transmit_dim, source_dim);
    const ComplexVector amplitudes =
        allocation.phi_sq.head(diag_len).cwiseSqrt().cast<cplx>();
    return cache.channel_basis.leftCols(diag_len) * amplitudes.asDiagonal() *
           cache.data_basis.leftCols(diag_len).transpose().cast<cplx>();
}

Precoder block_diagonalize(const ComplexMatrix& relaxed, const RealMatrix& mask,
                           const RealMatrix& data_cov, double total_power) {
    if (relaxed.rows() != mask.rows() || relaxed.cols() != mask.cols()) {
        throw validation_error("block_diagonalize: mask shape must match the precoder");
    }
    if (!(total_power > 0.0)) {
        throw validation_error("block_diagonalize: power budget must be positive");
    }
    const MaskShape shape = infer_mask_shape(mask);

    ComplexMatrix masked = mask.cast<cplx>().cwiseProduct(relaxed);
    const double masked_power = transmit_power(masked, data_cov);
    if (!(masked_power > 0.0) || !std::isfinite(masked_power)) {
        throw numerical_error("block_diagonalize: degenerate precoder (no energy left on the blocks)");
    }
    masked *= std::sqrt(total_power / masked_power);

    Precoder precoder;
    precoder.matrix = std::move(masked);
    precoder.blocks = extract_blocks(precoder.matrix, shape);
    return precoder;
}

Precoder design_proposed(const SystemConfig& config, const RealMatrix& data_cov,
                         const ComplexMatrix& noise_cov, const ComplexMatrix& channel) {
    check_design_inputs(config, data_cov, noise_cov, channel);
    const RealMatrix summation = build_summation(config.measurements_per_node, config.node_count);
    const SpectralCache cache = build_spectral_cache(data_cov, channel, noise_cov, summation);
    const ComplexMatrix relaxed = design_relaxed(cache, config.total_power);
    const RealMatrix mask =
        build_mask(config.antennas_per_node, config.measurements_per_node, config.node_count);
    Precoder precoder = block_diagonalize(relaxed, mask, data_cov, config.total_power);
    return finish_design(std::move(precoder), DesignTag::proposed, config, data_cov, noise_cov,
                         channel);
}

Precoder design_ignoring_correlation(const SystemConfig& config, const RealMatrix& data_cov,
                                     const ComplexMatrix& noise_cov, const ComplexMatrix& channel) {
    check_design_inputs(config, data_cov, noise_cov, channel);
    const RealMatrix truncated =
        truncate_to_blocks(data_cov, config.measurements_per_node, config.node_count);
    const RealMatrix summation = build_summation(config.measurements_per_node, config.node_count);
    const SpectralCache cache = build_spectral_cache(truncated, channel, noise_cov, summation);
    const ComplexMatrix relaxed = design_relaxed(cache, config.total_power);
    const RealMatrix mask =
        build_mask(config.antennas_per_node, config.measurements_per_node, config.node_count);
    // The truncation is a design-time belief only; power and MSE use the true covariance.
    Precoder precoder = block_diagonalize(relaxed, mask, data_cov, config.total_power);
    return finish_design(std::move(precoder), DesignTag::ignore_correlation, config, data_cov,
                         noise_cov, channel);
}

Precoder design_comm_then_compute(const SystemConfig& config, const RealMatrix& data_cov,
                                  const ComplexMatrix& noise_cov, const ComplexMatrix& channel) {
    check_design_inputs(config, data_cov, noise_cov, channel);
    // Targeting x itself instead of the sum: the leverage computation sees the
    // identity, which weights every data mode equally.
    const RealMatrix identity_target =
        RealMatrix::Identity(config.source_dim(), config.source_dim());
    const SpectralCache cache = build_spectral_cache(data_cov, channel, noise_cov, identity_target);
    const ComplexMatrix relaxed = design_relaxed(cache, config.total_power);
    const RealMatrix mask =
        build_mask(config.antennas_per_node, config.measurements_per_node, config.node_count);
    Precoder precoder = block_diagonalize(relaxed, mask, data_cov, config.total_power);
    return finish_design(std::move(precoder), DesignTag::comm_then_compute, config, data_cov,
                         noise_cov, channel);
}

Precoder design_random(const SystemConfig& config, const RealMatrix& data_cov,
                       std::uint64_t rng_seed) {
    config.validate();
    if (data_cov.rows() != config.source_dim() || data_cov.cols() != config.source_dim()) {
        throw validation_error("design: data covariance must be nK x nK");
    }
    Rng rng(rng_seed);
    ComplexMatrix matrix = ComplexMatrix::Zero(config.transmit_dim(), config.source_dim());
    // Row-major fill keeps the draw order independent of Eigen's storage layout.
    for (int k = 0; k < config.node_count; ++k) {
        for (int i = 0; i < config.antennas_per_node; ++i) {
            for (int j = 0; j < config.measurements_per_node; ++j) {
                matrix(k * config.antennas_per_node + i, k * config.measurements_per_node + j) =
                    rng.complex_normal();
            }
        }
    }
    const double power = transmit_power(matrix, data_cov);
    if (!(power > 0.0)) {
        throw numerical_error("design_random: degenerate draw with zero transmit power");
    }
    matrix *= std::sqrt(config.total_power / power);

    Precoder precoder;
    precoder.matrix = std::move(matrix);
    precoder.blocks = extract_blocks(
        precoder.matrix, MaskShape{config.antennas_per_node, config.measurements_per_node,
                                   config.node_count});
    precoder.tag = DesignTag::random;
    return precoder;
}

Precoder design_by_tag(DesignTag tag, const SystemConfig& config, const RealMatrix& data_cov,
                       const ComplexMatrix& noise_cov, const ComplexMatrix& channel,
                       std::uint64_t rng_seed) {
    switch (tag) {
        case DesignTag::proposed:
            return design_proposed(config, data_cov, noise_cov, channel);
        case DesignTag::ignore_correlation:
            return design_ignoring_correlation(config, data_cov, noise_cov, channel);
        case DesignTag::comm_then_compute:
            return design_comm_then_compute(config, data_cov, noise_cov, channel);
        case DesignTag::random:
            return design_random(config, data_cov, rng_seed);
    }
    throw validation_error("unknown design tag");
}

} // namespace aircomp
