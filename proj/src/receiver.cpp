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

#include "aircomp/receiver.hpp"

#include "aircomp/errors.hpp"

#include <cmath>
#include <string>

namespace aircomp {

namespace {

void check_dims(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                const RealMatrix& summation) {
    if (channel.cols() != precoder.rows()) {
        throw validation_error("receiver: channel columns must match precoder rows");
    }
    if (precoder.cols() != data_cov.rows() || data_cov.rows() != data_cov.cols()) {
        throw validation_error("receiver: data covariance must be square and match precoder columns");
    }
    if (noise_cov.rows() != channel.rows() || noise_cov.rows() != noise_cov.cols()) {
        throw validation_error("receiver: noise covariance must be square and match channel rows");
    }
    if (summation.cols() != data_cov.rows()) {
        throw validation_error("receiver: summation matrix columns must match data covariance");
    }
}

double real_trace_of(const ComplexMatrix& hermitian_product, const char* op) {
    const cplx trace = hermitian_product.trace();
    if (std::abs(trace.imag()) > 1e-8 * std::max(1.0, std::abs(trace.real()))) {
        throw numerical_error(std::string(op) + ": trace has a non-negligible imaginary part");
    }
    return trace.real();
}

} // namespace

LmmseReceiver lmmse_matrix(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                           const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                           const RealMatrix& summation) {
    check_dims(precoder, channel, data_cov, noise_cov, summation);
    const ComplexMatrix forward = channel * precoder; // H A, r x nK
    const ComplexMatrix cov_c = data_cov.cast<cplx>();
    const ComplexMatrix summation_c = summation.cast<cplx>();

    const ComplexMatrix cross = summation_c * cov_c * forward.adjoint(); // Q K A^H H^H, n x r
    ComplexMatrix gram = forward * cov_c * forward.adjoint() + noise_cov;
    gram = 0.5 * (gram + gram.adjoint()); // kill round-off asymmetry before the solve

    LmmseReceiver receiver;
    receiver.filter = hpd_solve(gram, ComplexMatrix(cross.adjoint()), "HAKA^HH^H+S").adjoint();
    receiver.target_dim = static_cast<int>(summation.rows());
    return receiver;
}

ComplexVector estimate(const LmmseReceiver& receiver, const ComplexVector& received) {
    if (received.size() != receiver.filter.cols()) {
        throw validation_error("estimate: received vector length must match the filter");
    }
    return receiver.filter * received;
}

double mse_closed_form(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                       const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                       const RealMatrix& summation) {
    check_dims(precoder, channel, data_cov, noise_cov, summation);
    const Eigen::Index dim = data_cov.rows();
    const ComplexMatrix forward = channel * precoder; // H A

    const RealMatrix data_inv =
        hpd_solve(data_cov, RealMatrix(RealMatrix::Identity(dim, dim)), "K");
    ComplexMatrix fisher =
        data_inv.cast<cplx>() + forward.adjoint() * hpd_solve(noise_cov, forward, "S");
    fisher = 0.5 * (fisher + fisher.adjoint());

    const ComplexMatrix solved =
        hpd_solve(fisher, ComplexMatrix(summation.transpose().cast<cplx>()), "K^-1+A^HH^HS^-1HA");
    return real_trace_of(summation.cast<cplx>() * solved, "mse_closed_form");
}

double mse_direct(const ComplexMatrix& precoder, const ComplexMatrix& channel,
                  const RealMatrix& data_cov, const ComplexMatrix& noise_cov,
                  const RealMatrix& summation) {
    check_dims(precoder, channel, data_cov, noise_cov, summation);
    const LmmseReceiver receiver = lmmse_matrix(precoder, channel, data_cov, noise_cov, summation);
    const ComplexMatrix mismatch =
        receiver.filter * channel * precoder - summation.cast<cplx>(); // W H A - Q
    const double signal_part =
        real_trace_of(mismatch * data_cov.cast<cplx>() * mismatch.adjoint(), "mse_direct");
    const double noise_part =
        real_trace_of(receiver.filter * noise_cov * receiver.filter.adjoint(), "mse_direct");
    return signal_part + noise_part;
}

} // namespace aircomp
