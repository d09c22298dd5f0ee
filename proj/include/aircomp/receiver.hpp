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

namespace aircomp {

/// Linear MMSE aggregation filter: the estimate of the target sum is W * y.
struct LmmseReceiver {
    ComplexMatrix filter; ///< W, n x r
    int target_dim = 0;   ///< n
};

/// W = Q K A^H H^H (H A K A^H H^H + S)^-1, computed through a Hermitian
/// positive definite solve (the bracket is PD whenever S is).
LmmseReceiver lmmse_matrix(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                           const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                           const RealMatrix& summation);

/// Estimate of the aggregation target from a received vector.
ComplexVector estimate(const LmmseReceiver& receiver, const ComplexVector& received);

/// MSE of the LMMSE estimate in closed form:
/// trace(Q (K^-1 + A^H H^H S^-1 H A)^-1 Q^T), real and nonnegative.
double mse_closed_form(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                       const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                       const RealMatrix& summation);

/// Same MSE evaluated from the error expansion with the explicit filter:
/// trace((W H A - Q) K (W H A - Q)^H) + trace(W S W^H). Agrees with
/// mse_closed_form (matrix-inversion-lemma identity); kept as an independent
/// algebraic route for cross-validation.
double mse_direct(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                  const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                  const RealMatrix& summation);

} // namespace aircomp
