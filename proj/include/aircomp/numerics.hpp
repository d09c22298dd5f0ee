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

#include <Eigen/Dense>

#include <complex>
#include <string_view>

namespace aircomp {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Eigendecomposition of a Hermitian (or real symmetric) matrix.
///
/// values are sorted non-increasing; column j of vectors pairs with values[j].
/// Each eigenvector carries a deterministic phase convention: its
/// largest-magnitude entry (lowest index on ties) is real and positive, so
/// repeated runs on identical input produce identical bits.
template <typename MatrixT>
struct EigenPair {
    RealVector values;
    MatrixT vectors;
};

using RealEigenPair = EigenPair<RealMatrix>;
using ComplexEigenPair = EigenPair<ComplexMatrix>;

/// Hermitian eigendecomposition with descending eigenvalues.
///
/// Negative eigenvalues in (-1e-12 * max, 0) are treated as round-off from a
/// positive semidefinite input and clamped to 0. Throws validation_error for
/// non-square or non-Hermitian input (tolerance 1e-10 on the max-abs scale).
RealEigenPair hermitian_eig(const RealMatrix& input);
ComplexEigenPair hermitian_eig(const ComplexMatrix& input);

/// Solves lhs * X = rhs for Hermitian positive definite lhs via Cholesky.
/// `label` names the matrix in the singularity diagnostic.
RealMatrix hpd_solve(const RealMatrix& lhs, const RealMatrix& rhs,
                     std::string_view label = "matrix");
ComplexMatrix hpd_solve(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                        std::string_view label = "matrix");

/// Lower Cholesky factor L with L * L^H = input and real positive diagonal.
RealMatrix cholesky_lower(const RealMatrix& input, std::string_view label = "matrix");
ComplexMatrix cholesky_lower(const ComplexMatrix& input, std::string_view label = "matrix");

/// Largest absolute entry (0 for empty matrices).
double max_abs(const RealMatrix& m);
double max_abs(const ComplexMatrix& m);

/// Hermitian symmetry check on the max-abs scale: ||X - X^H||_max <= tol * max(1, ||X||_max).
bool is_hermitian(const RealMatrix& m, double tol = 1e-10);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);

} // namespace aircomp
