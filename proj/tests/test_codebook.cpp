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

#include "rfos/codebook.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace rfos;
using rfos::testing::random_unitary;

namespace {

// Direct elementwise evaluation of the selection metric.
double metric_oracle(const CMatrix& V, const CMatrix& Vd) {
    const Eigen::Index M = V.cols();
    double total = 0.0;
    for (Eigen::Index m = 0; m < M; ++m) {
        double diag = 0.0;
        double off = 0.0;
        for (Eigen::Index j = 0; j < M; ++j) {
            cdouble p = 0.0;
            for (Eigen::Index k = 0; k < M; ++k)
                p += std::conj(V(k, m)) * Vd(k, j);
            (j == m ? diag : off) += std::norm(p);
        }
        total += diag / std::max(off, 1e-12);
    }
    return total;
}

std::size_t brute_force_select(const CMatrix& V, const Codebook& cb) {
    std::size_t best = 0;
    for (std::size_t d = 1; d < cb.size(); ++d)
        if (metric_oracle(V, cb.entries[d]) > metric_oracle(V, cb.entries[best]))
            best = d;
    return best;
}

} // namespace

TEST_CASE("generate_codebook sizes, unitarity and determinism") {
    CHECK(generate_codebook(0, 2, 1).size() == 1);
    const auto cb = generate_codebook(3, 2, 1);
    REQUIRE(cb.size() == 8);
    for (const auto& e : cb.entries)
        CHECK((e.adjoint() * e - CMatrix::Identity(2, 2)).norm() <= 1e-10);
    const auto again = generate_codebook(3, 2, 1);
    for (std::size_t d = 0; d < 8; ++d)
        CHECK((cb.entries[d].array() == again.entries[d].array()).all());
    const auto other = generate_codebook(3, 2, 2);
    CHECK_FALSE((cb.entries[0].array() == other.entries[0].array()).all());

    CHECK_THROWS_AS(generate_codebook(21, 2, 1), ConfigError);
    CHECK_NOTHROW(generate_codebook(4, 2, 1, 16));
    CHECK_THROWS_AS(generate_codebook(5, 2, 1, 16), ConfigError);
}

TEST_CASE("codebooks with the same seed are nested") {
    const auto small = generate_codebook(2, 2, 9);
    const auto big = generate_codebook(5, 2, 9);
    for (std::size_t d = 0; d < small.size(); ++d)
        CHECK((small.entries[d].array() == big.entries[d].array()).all());
    const auto pre = big.prefix(2);
    CHECK(pre.bits == 2);
    CHECK(pre.size() == 4);
    CHECK_THROWS_AS(small.prefix(3), ConfigError);
}

TEST_CASE("alignment_score examples") {
    auto eng = rng::make_stream(1, rng::Domain::Test, 1);
    const CMatrix V = random_unitary(eng, 2);
    const auto self = alignment_score(V, V);
    CHECK(self.perfect);
    CHECK((self.gamma - RMatrix::Identity(2, 2)).norm() < 1e-12);

    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    const auto worst = alignment_score(CMatrix::Identity(2, 2), swap);
    CHECK_FALSE(worst.perfect);
    CHECK(worst.gamma(0, 0) == 0.0);
    CHECK(worst.gamma(1, 1) == 0.0);
    CHECK(worst.score == 0.0);

    for (int i = 0; i < 100; ++i) {
        const CMatrix A = random_unitary(eng, 2);
        const CMatrix B = random_unitary(eng, 2);
        const auto s = alignment_score(A, B);
        CHECK(std::abs(s.score - metric_oracle(A, B)) <= 1e-12 * std::max(1.0, s.score));
    }
}

TEST_CASE("alignment gamma is row-stochastic and bounded") {
    auto eng = rng::make_stream(2, rng::Domain::Test, 2);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Index M = 1 + i % 4;
        const auto s = alignment_score(random_unitary(eng, M), random_unitary(eng, M));
        for (Eigen::Index r = 0; r < M; ++r) {
            CHECK(std::abs(s.gamma.row(r).sum() - 1.0) <= 1e-10);
            for (Eigen::Index c = 0; c < M; ++c) {
                CHECK(s.gamma(r, c) >= 0.0);
                CHECK(s.gamma(r, c) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("alignment_score rejects non-unitary input") {
    CHECK_THROWS_AS(alignment_score(CMatrix::Identity(2, 2) * 2.0, CMatrix::Identity(2, 2)), NumericError);
}

TEST_CASE("select_bfm") {
    auto eng = rng::make_stream(3, rng::Domain::Test, 3);
    const CMatrix V = random_unitary(eng, 2);

    auto cb = generate_codebook(3, 2, 4);
    cb.entries[5] = V;
    CHECK(select_bfm(V, cb) == 5);

    CHECK(select_bfm(V, generate_codebook(0, 2, 4)) == 0);

    for (int i = 0; i < 50; ++i) {
        const auto book = generate_codebook(4, 2, 100 + i);
        const CMatrix W = random_unitary(eng, 2);
        CHECK(select_bfm(W, book) == brute_force_select(W, book));
    }

    CHECK(select_bfm(V, exact_codebook(2)) == kExactIndex);
    CHECK((alignment_gamma(V, exact_codebook(2), kExactIndex) - RMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("select_bfm ties resolve to the lowest index") {
    auto cb = generate_codebook(2, 2, 5);
    cb.entries[3] = cb.entries[1];
    CMatrix V = cb.entries[1];
    CHECK(select_bfm(V, cb) == 1);
}

TEST_CASE("selected score is nondecreasing over nested codebooks") {
    auto eng = rng::make_stream(4, rng::Domain::Test, 4);
    const auto big = generate_codebook(8, 2, 77);
    for (int i = 0; i < 30; ++i) {
        const CMatrix V = random_unitary(eng, 2);
        double previous = -1.0;
        for (unsigned b = 0; b <= 8; ++b) {
            const auto book = big.prefix(b);
            const double s = alignment_score(V, book.entries[select_bfm(V, book)]).score;
            CHECK(s >= previous);
            previous = s;
        }
    }
}

TEST_CASE("select_bfm picks the same matrix after permuting the codebook") {
    auto eng = rng::make_stream(5, rng::Domain::Test, 5);
    const auto cb = generate_codebook(5, 2, 8);
    Codebook reversed = cb;
    std::reverse(reversed.entries.begin(), reversed.entries.end());
    for (int i = 0; i < 30; ++i) {
        const CMatrix V = random_unitary(eng, 2);
        const CMatrix& a = cb.entries[select_bfm(V, cb)];
        const CMatrix& b = reversed.entries[select_bfm(V, reversed)];
        CHECK((a.array() == b.array()).all());
    }
}

TEST_CASE("select_bfm_cluster") {
    auto eng = rng::make_stream(6, rng::Domain::Test, 6);
    const auto cb = generate_codebook(3, 2, 12);
    const CMatrix V = random_unitary(eng, 2);

    const std::vector<CMatrix> same(4, V);
    CHECK(select_bfm_cluster(same, cb) == select_bfm(V, cb));
    const std::vector<CMatrix> single{V};
    CHECK(select_bfm_cluster(single, cb) == select_bfm(V, cb));

    for (int i = 0; i < 50; ++i) {
        std::vector<CMatrix> cluster;
        for (int u = 0; u < 4; ++u)
            cluster.push_back(random_unitary(eng, 2));
        std::size_t best = 0;
        double best_sum = -1.0;
        for (std::size_t d = 0; d < cb.size(); ++d) {
            double sum = 0.0;
            for (const auto& W : cluster)
                sum += metric_oracle(W, cb.entries[d]);
            if (sum > best_sum) {
                best_sum = sum;
                best = d;
            }
        }
        CHECK(select_bfm_cluster(cluster, cb) == best);
    }

    CHECK_THROWS_AS(select_bfm_cluster(std::vector<CMatrix>{}, cb), ConfigError);
    CHECK(select_bfm_cluster(same, exact_codebook(2)) == kExactIndex);
}

TEST_CASE("codebook file round trip is bit-exact") {
    const auto cb = generate_codebook(4, 3, 31);
    std::stringstream ss;
    write_codebook(ss, cb);
    const auto back = read_codebook(ss);
    CHECK(back.bits == cb.bits);
    CHECK(back.dim == cb.dim);
    CHECK(back.seed == cb.seed);
    CHECK(back.exact_mode == cb.exact_mode);
    REQUIRE(back.size() == cb.size());
    for (std::size_t d = 0; d < cb.size(); ++d)
        CHECK((back.entries[d].array() == cb.entries[d].array()).all());

    const auto path = std::filesystem::temp_directory_path() / "rfos_codebook_test.txt";
    save_codebook(cb, path);
    const auto loaded = load_codebook(path);
    std::filesystem::remove(path);
    for (std::size_t d = 0; d < cb.size(); ++d)
        CHECK((loaded.entries[d].array() == cb.entries[d].array()).all());

    std::stringstream bad("rfos-codebook 1\nbits 2\ndim 2\nseed 1\nexact 0\nentries 3\n");
    CHECK_THROWS(read_codebook(bad));
}
