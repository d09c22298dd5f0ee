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
#include "aircomp/numerics.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace aircomp {

enum class DesignTag {
    proposed,           ///< correlation-aware spectral design
    ignore_correlation, ///< designs against the block-diagonal truncation of K
    comm_then_compute,  ///< optimizes reconstruction of x instead of the sum
    random,             ///< normalized random blocks
};

std::string_view to_string(DesignTag tag);
DesignTag design_tag_from_string(std::string_view name);

/// Everything the spectral design consumes: eigendecompositions of the data
/// covariance and of the noise-whitened channel Gram matrix, plus the
/// aggregation leverage of each data mode.
struct SpectralCache {
    RealMatrix data_basis;       ///< U, nK x nK orthogonal
    RealVector data_gains;       ///< eigenvalues of K, non-increasing
    ComplexMatrix channel_basis; ///< V, mK x mK unitary
    RealVector channel_gains;    ///< eigenvalues of H^H S^-1 H, zero past index r
    RealVector leverages;        ///< R_j = squared norm of column j of Q*U
    RealMatrix aggregated_basis; ///< Q*U, n x nK
    int active_limit = 0;        ///< min(r, mK)
};

/// Block-diagonal transmit precoder with per-node blocks and the closed-form
/// MSE predicted for it (absent when the design never saw a channel).
struct Precoder {
    ComplexMatrix matrix; ///< mK x nK, block-diagonal
    std::vector<ComplexMatrix> blocks;
    DesignTag tag = DesignTag::proposed;
    std::optional<double> predicted_mse;
};

/// Transmit power trace(A K A^H) spent by a precoder on sources with
/// covariance K (real part; the trace is real for Hermitian K).
double transmit_power(const ComplexMatrix& precoder, const RealMatrix& data_cov);

SpectralCache build_spectral_cache(const RealMatrix& data_cov, const ComplexMatrix& channel,
                                   const ComplexMatrix& noise_cov, const RealMatrix& summation);

/// Unconstrained-structure solution: V * Phi * U^T with the water-filled
/// diagonal Phi. Satisfies trace(A K A^H) = budget by construction.
ComplexMatrix design_relaxed(const SpectralCache& cache, double total_power);

/// Masks the relaxed solution to block-diagonal form and rescales it back to
/// the power budget. The per-node block shape is inferred from the mask,
/// which must be a valid all-ones-diagonal-blocks masking matrix.
Precoder block_diagonalize(const ComplexMatrix& relaxed, const RealMatrix& mask,
                           const RealMatrix& data_cov, double total_power);

Precoder design_proposed(const SystemConfig& config, const RealMatrix& data_cov,
                         const ComplexMatrix& noise_cov, const ComplexMatrix& channel);

Precoder design_ignoring_correlation(const SystemConfig& config, const RealMatrix& data_cov,
                                     const ComplexMatrix& noise_cov, const ComplexMatrix& channel);

Precoder design_comm_then_compute(const SystemConfig& config, const RealMatrix& data_cov,
                                  const ComplexMatrix& noise_cov, const ComplexMatrix& channel);

Precoder design_random(const SystemConfig& config, const RealMatrix& data_cov,
                       std::uint64_t rng_seed);

/// Dispatch by tag; `rng_seed` feeds design_random only.
Precoder design_by_tag(DesignTag tag, const SystemConfig& config, const RealMatrix& data_cov,
                       const ComplexMatrix& noise_cov, const ComplexMatrix& channel,
                       std::uint64_t rng_seed);

} // namespace aircomp
