// SPDX-License-Identifier: Apache-2.0
//
// rfos: opportunistic scheduling and beamforming simulator for MIMO-OFDMA downlink
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

#include "rfos/decomposition.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace rfos;
using rfos::testing::random_channel;
using rfos::testing::random_matrix;

namespace {

double orthonormality_error(const CMatrix& A) {
    return (A.adjoint() * A - CMatrix::Identity(A.cols(), A.cols())).norm();
}

} // namespace

TEST_CASE("svd small cases") {
    const auto id = svd(CMatrix::Identity(2, 2));
    CHECK(std::abs(id.S[0] - 1.0) < 1e-15);
    CHECK(std::abs(id.S[1] - 1.0) < 1e-15);

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    const auto ds = svd(d);
    CHECK(std::abs(ds.S[0] - 3.0) < 1e-15);
    CHECK(std::abs(ds.S[1]) < 1e-15);
    CHECK(relative_error(ds.U * ds.S.cast<cdouble>().asDiagonal() * ds.V.adjoint(), d) < 1e-12);
}

TEST_CASE("svd reconstructs random tall matrices") {
    auto eng = rng::make_stream(1, rng::Domain::Test, 100);
    for (int i = 0; i < 50; ++i) {
        const CMatrix A = random_matrix(eng, 16, 2);
        const auto f = svd(A);
        CHECK(f.S.size() == 2);
        CHECK(f.S[0] >= f.S[1]);
        CHECK(f.S[1] >= 0.0);
        CHECK(orthonormality_error(f.U) < 1e-10);
        CHECK(orthonormality_error(f.V) < 1e-10);
        CHECK(relative_error(f.U * f.S.cast<cdouble>().asDiagonal() * f.V.adjoint(), A) <= 1e-10);
    }
}

TEST_CASE("svd and thin_qr reject non-finite input") {
    CMatrix A = CMatrix::Identity(2, 2);
    A(1, 0) = cdouble(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(svd(A), NumericError);
    CHECK_THROWS_AS(thin_qr(A), NumericError);
    CHECK_THROWS_AS(svd(CMatrix(0, 0)), NumericError);
}

TEST_CASE("thin_qr small cases") {
    const auto id = thin_qr(CMatrix::Identity(2, 2));
    CHECK(rfos::testing::max_abs_diff(id.Qf, CMatrix::Identity(2, 2)) < 1e-15);
    CHECK(rfos::testing::max_abs_diff(id.R, CMatrix::Identity(2, 2)) < 1e-15);

    CMatrix col(2, 1);
    col << 0.0, 2.0;
    const auto c = thin_qr(col);
    CHECK(std::abs(c.Qf(0, 0)) < 1e-15);
    CHECK(std::abs(c.Qf(1, 0) - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(c.R(0, 0) - cdouble(2.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS(thin_qr(CMatrix::Identity(1, 2)), ConfigError);
}

TEST_CASE("thin_qr invariants on random input") {
    auto eng = rng::make_stream(2, rng::Domain::Test, 200);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Index rows = 2 + i % 5;
        const Eigen::Index cols = 1 + i % 2;
        const CMatrix A = random_matrix(eng, rows, cols);
        const auto f = thin_qr(A);
        REQUIRE(f.Qf.rows() == rows);
        REQUIRE(f.Qf.cols() == cols);
        REQUIRE(f.R.rows() == cols);
        CHECK(orthonormality_error(f.Qf) < 1e-10);
        for (Eigen::Index r = 0; r < cols; ++r) {
            CHECK(f.R(r, r).real() >= 0.0);
            CHECK(std::abs(f.R(r, r).imag()) < 1e-12);
            for (Eigen::Index c = 0; c < r; ++c)
                CHECK(std::abs(f.R(r, c)) < 1e-12);
        }
        CHECK(relative_error(f.Qf * f.R, A) <= 1e-10);
    }
}

TEST_CASE("thin_qr determinant oracle") {
    auto eng = rng::make_stream(3, rng::Domain::Test, 300);
    for (int i = 0; i < 100; ++i) {
        const CMatrix A = random_matrix(eng, 2, 2);
        const auto f = thin_qr(A);
        const double detR = std::abs(f.R(0, 0) * f.R(1, 1));
        const double detA = std::abs(A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0));
        CHECK(std::abs(detR - detA) <= 1e-10 * detA);
    }
}

TEST_CASE("thin_qr handles a rank-deficient column") {
    CMatrix A(3, 2);
    A << cdouble(1, 1), cdouble(2, 2), cdouble(0, 1), cdouble(-1, 1), cdouble(2, 0), cdouble(4, 0);
    A.col(1) = A.col(0) * cdouble(0.0, 2.0);
    const auto f = thin_qr(A);
    CHECK(orthonormality_error(f.Qf) < 1e-10);
    CHECK(std::abs(f.R(1, 1)) < 1e-12);
    CHECK(relative_error(f.Qf * f.R, A) <= 1e-10);
}

TEST_CASE("joint_decompose scalar channel") {
    ChannelTaps t(1, 1, 1);
    t.tap(0, 0)[0] = cdouble(-0.6, 0.8);
    const auto joint = joint_decompose(build_H(t), 4);
    REQUIRE(joint.V.rows() == 1);
    CHECK(std::abs(std::abs(joint.V(0, 0)) - 1.0) < 1e-15);
    for (const auto& f : joint.per_subcarrier)
        CHECK(std::abs(f.R(0, 0) - cdouble(1.0, 0.0)) < 1e-15);
}

TEST_CASE("joint_decompose reconstructs G_q and shares V across subcarriers") {
    constexpr std::size_t Q = 32;
    for (std::uint64_t c = 0; c < 50; ++c) {
        const auto ch = random_channel(c, 2, 2 + c % 2, 8);
        const auto joint = joint_decompose(ch, Q);
        REQUIRE(joint.per_subcarrier.size() == Q);
        CHECK(orthonormality_error(joint.V) < 1e-10);
        for (std::size_t q = 0; q < Q; ++q) {
            const auto& f = joint.per_subcarrier[q];
            const CMatrix G = rfos::testing::explicit_kronecker_selector(q, Q, ch.num_rx, 8) * ch.H;
            CHECK(orthonormality_error(f.Qf) < 1e-10);
            CHECK(relative_error(f.Qf * f.R * joint.V.adjoint(), G) <= 1e-9);
        }
    }
}

TEST_CASE("determinant identity: prod |R_mm| equals prod of singular values") {
    constexpr std::size_t Q = 16;
    for (std::uint64_t c = 0; c < 200; ++c) {
        const auto ch = random_channel(1000 + c, 2, 2 + c % 3, 8);
        const auto joint = joint_decompose(ch, Q);
        const auto eb = eb_decompose(ch, Q);
        for (std::size_t q = 0; q < Q; ++q) {
            const RVector& s = eb.per_subcarrier[q].S;
            if (s[s.size() - 1] <= 1e-8)
                continue;
            const double lhs = joint.per_subcarrier[q].R.diagonal().cwiseAbs().prod();
            const double rhs = s.prod();
            CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
        }
    }
}

TEST_CASE("eb_decompose") {
    const auto flat = random_channel(7, 2, 2, 1);
    const auto eb_flat = eb_decompose(flat, 8);
    for (const auto& f : eb_flat.per_subcarrier)
        CHECK((f.S.array() == eb_flat.per_subcarrier[0].S.array()).all());

    ChannelTaps ident(2, 2, 1);
    ident.tap(0, 0)[0] = 1.0;
    ident.tap(1, 1)[0] = 1.0;
    const auto eb_id = eb_decompose(build_H(ident), 4);
    CHECK(std::abs(eb_id.per_subcarrier[2].S[0] - 1.0) < 1e-15);
    CHECK(std::abs(eb_id.per_subcarrier[2].S[1] - 1.0) < 1e-15);

    constexpr std::size_t Q = 16;
    for (std::uint64_t c = 0; c < 30; ++c) {
        const auto ch = random_channel(c);
        const auto eb = eb_decompose(ch, Q);
        for (std::size_t q = 0; q < Q; ++q) {
            const CMatrix G = freq_channel(ch, q, Q).G;
            const auto& f = eb.per_subcarrier[q];
            CHECK(std::abs(f.S.squaredNorm() - G.squaredNorm()) <= 1e-10 * G.squaredNorm());
            CHECK(relative_error(f.U * f.S.cast<cdouble>().asDiagonal() * f.V.adjoint(), G) <= 1e-10);
        }
    }
}

TEST_CASE("decompositions are bitwise deterministic") {
    const auto ch = random_channel(11);
    const auto a = joint_decompose(ch, 16);
    const auto b = joint_decompose(ch, 16);
    CHECK((a.V.array() == b.V.array()).all());
    for (std::size_t q = 0; q < 16; ++q) {
        CHECK((a.per_subcarrier[q].Qf.array() == b.per_subcarrier[q].Qf.array()).all());
        CHECK((a.per_subcarrier[q].R.array() == b.per_subcarrier[q].R.array()).all());
    }
}

TEST_CASE("receive rotation keeps white noise white") {
    const auto ch = random_channel(12, 2, 3, 8);
    const auto joint = joint_decompose(ch, 16);
    const CMatrix& Qf = joint.per_subcarrier[5].Qf;
    auto eng = rng::make_stream(12, rng::Domain::Test, 12);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    constexpr int draws = 100000;
    CMatrix cov = CMatrix::Zero(2, 2);
    for (int i = 0; i < draws; ++i) {
        CVector w(3);
        for (Eigen::Index k = 0; k < 3; ++k) {
            const double re = normal(eng);
            const double im = normal(eng);
            w[k] = cdouble(re, im);
        }
        const CVector r = Qf.adjoint() * w;
        cov += r * r.adjoint();
    }
    cov /= draws;
    CHECK((cov - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 0.02);
}
