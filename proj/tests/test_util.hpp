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

#pragma once

#include "rfos/channel_model.hpp"
#include "rfos/rng.hpp"
#include "rfos/types.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace rfos::testing {

inline CMatrix random_matrix(rng::Engine& eng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix A(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double re = normal(eng);
            const double im = normal(eng);
            A(r, c) = cdouble(re, im);
        }
    return A;
}

// Unitary from the Q factor of Eigen's Householder QR; independent of the
// library's own QR.
inline CMatrix random_unitary(rng::Engine& eng, Eigen::Index n) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(eng, n, n));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

inline TimeDomainChannel random_channel(std::uint64_t index, std::size_t M = 2, std::size_t N = 2,
                                        std::size_t L = 8, std::uint64_t seed = 99) {
    auto stream = rng::make_stream(seed, rng::Domain::Test, index);
    return build_H(generate_taps(make_pdp(L), M, N, stream));
}

// Explicit (N x N*L) matrix I_N (x) e_q^T, built entry by entry.
inline CMatrix explicit_kronecker_selector(std::size_t q, std::size_t Q, std::size_t N, std::size_t L) {
    CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N * L));
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t l = 0; l < L; ++l) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(l) * static_cast<double>(q) /
                                 static_cast<double>(Q);
            K(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * L + l)) =
                cdouble(std::cos(angle), std::sin(angle));
        }
    return K;
}

inline double max_abs_diff(const CMatrix& A, const CMatrix& B) {
    return (A - B).cwiseAbs().maxCoeff();
}

} // namespace rfos::testing
