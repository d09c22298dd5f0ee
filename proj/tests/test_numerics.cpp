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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aircomp/errors.hpp"
#include "aircomp/numerics.hpp"
#include "support/test_helpers.hpp"

using namespace aircomp;
using namespace aircomp::testing;

TEST_CASE("hermitian_eig: identity") {
    const RealEigenPair pair = hermitian_eig(RealMatrix(RealMatrix::Identity(2, 2)));
    CHECK(pair.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    const RealMatrix gram = pair.vectors.transpose() * pair.vectors;
    CHECK(rel_frobenius_error(gram, RealMatrix(RealMatrix::Identity(2, 2))) < 1e-10);
}

TEST_CASE("hermitian_eig: 2x2 exponential correlation") {
    RealMatrix m(2, 2);
    m << 1.0, 0.8, 0.8, 1.0;
    const RealEigenPair pair = hermitian_eig(m);
    // roots of (1-v)^2 = 0.64
    CHECK(pair.values[0] == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(pair.values[1] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: diagonal input sorted descending") {
    RealMatrix m = RealMatrix::Zero(2, 2);
    m(0, 0) = 0.2;
    m(1, 1) = 1.8;
    const RealEigenPair pair = hermitian_eig(m);
    CHECK(pair.values[0] == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(pair.values[1] == doctest::Approx(0.2).epsilon(1e-12));
    // basis is the swap permutation up to sign; sign convention makes pivots positive
    CHECK(pair.vectors(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.vectors(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(RealMatrix(RealMatrix::Zero(2, 3))), validation_error);
    RealMatrix skew(2, 2);
    skew << 0.0, 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(hermitian_eig(skew), validation_error);
    ComplexMatrix not_herm = ComplexMatrix::Zero(2, 2);
    not_herm(0, 1) = cplx(0.0, 1.0);
    not_herm(1, 0) = cplx(0.0, 1.0); // Hermitian would need -i here
    CHECK_THROWS_AS(hermitian_eig(not_herm), validation_error);
}

TEST_CASE("hermitian_eig: round-trip and ordering on random Hermitian input") {
    Rng rng(7001);
    for (int rep = 0; rep < 40; ++rep) {
        const int dim = 1 + static_cast<int>(rng.raw() % 8);
        const ComplexMatrix input = random_hermitian(dim, rng);
        const ComplexEigenPair pair = hermitian_eig(input);

        for (int j = 1; j < dim; ++j) CHECK(pair.values[j] <= pair.values[j - 1]);

        const ComplexMatrix gram = pair.vectors.adjoint() * pair.vectors;
        CHECK(rel_frobenius_error(gram, ComplexMatrix(ComplexMatrix::Identity(dim, dim))) < 1e-10);

        const ComplexMatrix rebuilt =
            pair.vectors * pair.values.cast<cplx>().asDiagonal() * pair.vectors.adjoint();
        CHECK(rel_frobenius_error(rebuilt, input) < 1e-10);
    }
}

TEST_CASE("hermitian_eig: deterministic basis across repeated calls") {
    Rng rng(7002);
    const ComplexMatrix input = random_hermitian(6, rng);
    const ComplexEigenPair first = hermitian_eig(input);
    const ComplexEigenPair second = hermitian_eig(input);
    CHECK((first.vectors.array() == second.vectors.array()).all());
    CHECK((first.values.array() == second.values.array()).all());
}

TEST_CASE("hermitian_eig: PSD round-off clamped to exact zero") {
    Rng rng(7003);
    RealMatrix v = random_real(4, 1, rng);
    const RealMatrix rank_one = v * v.transpose();
    const RealEigenPair pair = hermitian_eig(rank_one);
    CHECK(pair.values[0] == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
    for (int j = 1; j < 4; ++j) CHECK(pair.values[j] >= 0.0);
}

TEST_CASE("hpd_solve: hand cases") {
    const ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
    ComplexMatrix rhs(3, 2);
    rhs << cplx(1, 1), cplx(0, 2), cplx(3, 0), cplx(1, -1), cplx(0, 0), cplx(2, 2);
    CHECK(rel_frobenius_error(hpd_solve(eye, rhs), rhs) < 1e-14);

    const ComplexMatrix twice = 2.0 * eye;
    CHECK(rel_frobenius_error(hpd_solve(twice, eye), ComplexMatrix(0.5 * eye)) < 1e-14);

    RealMatrix lhs(2, 2);
    lhs << 2.0, 1.0, 1.0, 2.0;
    RealMatrix b(2, 1);
    b << 1.0, 1.0;
    const RealMatrix x = hpd_solve(lhs, b);
    CHECK(x(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(x(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("hpd_solve: error names the offending matrix") {
    RealMatrix indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    const RealMatrix rhs = RealMatrix::Identity(2, 2);
    CHECK_THROWS_WITH_AS(hpd_solve(indefinite, rhs, "noise covariance"),
                         doctest::Contains("noise covariance"), numerical_error);
}

TEST_CASE("hpd_solve: agrees with explicit inverse on random HPD systems") {
    Rng rng(7010);
    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix lhs = random_hpd(5, rng);
        const ComplexMatrix rhs = random_complex(5, 3, rng);
        const ComplexMatrix via_solve = hpd_solve(lhs, rhs);
        const ComplexMatrix via_inverse = lhs.inverse() * rhs;
        CHECK(rel_frobenius_error(via_solve, via_inverse) < 1e-9);
        CHECK(rel_frobenius_error(ComplexMatrix(lhs * via_solve), rhs) < 1e-10);
    }
}

TEST_CASE("cholesky_lower: hand cases") {
    const RealMatrix eye = RealMatrix::Identity(3, 3);
    CHECK(rel_frobenius_error(cholesky_lower(eye), eye) < 1e-14);

    RealMatrix diag = RealMatrix::Zero(2, 2);
    diag(0, 0) = 4.0;
    diag(1, 1) = 9.0;
    const RealMatrix factor = cholesky_lower(diag);
    CHECK(factor(0, 0) == doctest::Approx(2.0));
    CHECK(factor(1, 1) == doctest::Approx(3.0));
    CHECK(factor(1, 0) == doctest::Approx(0.0));

    RealMatrix corr(2, 2);
    corr << 1.0, 0.8, 0.8, 1.0;
    const RealMatrix l = cholesky_lower(corr);
    CHECK(l(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(l(1, 0) == doctest::Approx(0.8).epsilon(1e-13));
    CHECK(l(1, 1) == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(l(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("cholesky_lower: reconstruction and positive diagonal on random HPD input") {
    Rng rng(7020);
    for (int rep = 0; rep < 25; ++rep) {
        const int dim = 1 + static_cast<int>(rng.raw() % 6);
        const ComplexMatrix input = random_hpd(dim, rng);
        const ComplexMatrix factor = cholesky_lower(input);
        CHECK(rel_frobenius_error(ComplexMatrix(factor * factor.adjoint()), input) < 1e-10);
        for (int j = 0; j < dim; ++j) {
            CHECK(factor(j, j).real() > 0.0);
            CHECK(factor(j, j).imag() == doctest::Approx(0.0).epsilon(1e-14));
        }
    }
    RealMatrix indefinite(2, 2);
    indefinite << 0.0, 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(cholesky_lower(indefinite), numerical_error);
}
