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

#include "aircomp/numerics.hpp"

#include "aircomp/errors.hpp"

#include <cmath>
#include <string>

namespace aircomp {

namespace {

constexpr double kPsdClampRel = 1e-12;

template <typename MatrixT>
double max_abs_impl(const MatrixT& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

template <typename MatrixT>
bool is_hermitian_impl(const MatrixT& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double dev = max_abs_impl<MatrixT>(m - m.adjoint());
    return dev <= tol * std::max(1.0, max_abs_impl(m));
}

void require_hermitian(Eigen::Index rows, Eigen::Index cols, bool hermitian,
                       const char* op) {
    if (rows != cols) {
        throw validation_error(std::string(op) + ": input must be square, got " +
                               std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!hermitian) {
        throw validation_error(std::string(op) + ": input is not Hermitian within tolerance");
    }
}

// Round-off negatives of a PSD spectrum go to exact zero; genuine negative
// eigenvalues (indefinite input) are kept.
void clamp_psd_roundoff(RealVector& values) {
    if (values.size() == 0) return;
    const double top = values.maxCoeff();
    if (top <= 0.0) return;
    const double threshold = kPsdClampRel * top;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0 && values[i] > -threshold) values[i] = 0.0;
    }
}

void fix_column_sign(Eigen::Ref<Eigen::VectorXd> col) {
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    if (col[pivot] < 0.0) col = -col;
}

void fix_column_phase(Eigen::Ref<Eigen::VectorXcd> col) {
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    const double mag = std::abs(col[pivot]);
    if (mag == 0.0) return;
    const cplx rotation = std::conj(col[pivot]) / mag;
    col *= rotation;
    col[pivot] = cplx(std::abs(col[pivot]), 0.0);
}

template <typename MatrixT, typename ColumnFixer>
EigenPair<MatrixT> hermitian_eig_impl(const MatrixT& input, ColumnFixer fix_column,
                                      const char* op) {
    require_hermitian(input.rows(), input.cols(), is_hermitian_impl(input, 1e-10), op);

    Eigen::SelfAdjointEigenSolver<MatrixT> solver(input);
    if (solver.info() != Eigen::Success) {
        throw numerical_error(std::string(op) + ": eigendecomposition did not converge");
    }

    const Eigen::Index dim = input.rows();
    EigenPair<MatrixT> out;
    out.values = solver.eigenvalues().reverse(); // Eigen sorts ascending
    out.vectors = solver.eigenvectors().rowwise().reverse();
    clamp_psd_roundoff(out.values);
    for (Eigen::Index j = 0; j < dim; ++j) fix_column(out.vectors.col(j));
    return out;
}

template <typename MatrixT>
MatrixT hpd_solve_impl(const MatrixT& lhs, const MatrixT& rhs, std::string_view label) {
    require_hermitian(lhs.rows(), lhs.cols(), is_hermitian_impl(lhs, 1e-10), "hpd_solve");
    if (lhs.cols() != rhs.rows()) {
        throw validation_error("hpd_solve: dimension mismatch between lhs and rhs");
    }
    Eigen::LLT<MatrixT> llt(lhs);
    if (llt.info() != Eigen::Success) {
        throw numerical_error("hpd_solve: " + std::string(label) +
                              " is not positive definite (Cholesky failed)");
    }
    return llt.solve(rhs);
}

template <typename MatrixT>
MatrixT cholesky_lower_impl(const MatrixT& input, std::string_view label) {
    require_hermitian(input.rows(), input.cols(), is_hermitian_impl(input, 1e-10),
                      "cholesky_lower");
    Eigen::LLT<MatrixT> llt(input);
    if (llt.info() != Eigen::Success) {
        throw numerical_error("cholesky_lower: " + std::string(label) +
                              " is not positive definite (Cholesky failed)");
    }
    return llt.matrixL();
}

} // namespace

RealEigenPair hermitian_eig(const RealMatrix& input) {
    return hermitian_eig_impl<RealMatrix>(
        input, [](Eigen::Ref<Eigen::VectorXd> col) { fix_column_sign(col); },
        "hermitian_eig");
}

ComplexEigenPair hermitian_eig(const ComplexMatrix& input) {
    return hermitian_eig_impl<ComplexMatrix>(
        input, [](Eigen::Ref<Eigen::VectorXcd> col) { fix_column_phase(col); },
        "hermitian_eig");
}

RealMatrix hpd_solve(const RealMatrix& lhs, const RealMatrix& rhs, std::string_view label) {
    return hpd_solve_impl(lhs, rhs, label);
}

ComplexMatrix hpd_solve(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                        std::string_view label) {
    return hpd_solve_impl(lhs, rhs, label);
}

RealMatrix cholesky_lower(const RealMatrix& input, std::string_view label) {
    return cholesky_lower_impl(input, label);
}

ComplexMatrix cholesky_lower(const ComplexMatrix& input, std::string_view label) {
    return cholesky_lower_impl(input, label);
}

double max_abs(const RealMatrix& m) { return max_abs_impl(m); }
double max_abs(const ComplexMatrix& m) { return max_abs_impl(m); }

bool is_hermitian(const RealMatrix& m, double tol) { return is_hermitian_impl(m, tol); }
bool is_hermitian(const ComplexMatrix& m, double tol) { return is_hermitian_impl(m, tol); }

} // namespace aircomp
