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

#include <Eigen/SVD>

#include <cmath>

namespace rfos {

namespace {

void require_finite(const CMatrix& A, const char* what) {
    if (A.size() == 0)
        throw NumericError(std::string(what) + ": empty matrix");
    if (!A.allFinite())
        throw NumericError(std::string(what) + ": non-finite entry");
}

} // namespace

SvdFactors svd(const CMatrix& A) {
    require_finite(A, "svd");
    Eigen::JacobiSVD<CMatrix> solver(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

// Householder QR. Reflector k maps column k of the trailing block onto
// alpha * e_1 with alpha = -phase(x_0) ||x||, which avoids cancellation in
// v = x - alpha e_1. Column phases are moved into Qf at the end so diag(R)
// is real and nonnegative.
QrFactors thin_qr(const CMatrix& A) {
    require_finite(A, "thin_qr");
    const Eigen::Index rows = A.rows();
    const Eigen::Index cols = A.cols();
    if (rows < cols)
        throw ConfigError("thin_qr requires rows >= cols (got " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ")");

    CMatrix work = A;
    std::vector<CVector> reflectors;
    reflectors.reserve(static_cast<std::size_t>(cols));

    for (Eigen::Index k = 0; k < cols; ++k) {
        const Eigen::Index len = rows - k;
        CVector v = work.block(k, k, len, 1);
        const double norm_x = v.norm();
        const double tail = len > 1 ? v.tail(len - 1).norm() : 0.0;
        if (norm_x == 0.0 || tail == 0.0) {
            // Already upper triangular in this column.
            reflectors.emplace_back();
            continue;
        }
        const cdouble x0 = v[0];
        const cdouble phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cdouble(1.0, 0.0);
        const cdouble alpha = -phase * norm_x;
        v[0] -= alpha;
        v /= v.norm();
        // work <- (I - 2 v v^H) work on the trailing block.
        auto block = work.block(k, k, len, cols - k);
        const Eigen::Matrix<cdouble, 1, Eigen::Dynamic> w = v.adjoint() * block;
        block.noalias() -= 2.0 * v * w;
        work(k, k) = alpha;
        if (len > 1)
            work.block(k + 1, k, len - 1, 1).setZero();
        reflectors.push_back(std::move(v));
    }

    // Qf = H_0 H_1 ... H_{cols-1} applied to the first cols columns of I.
    CMatrix Qf = CMatrix::Identity(rows, cols);
    for (Eigen::Index k = cols - 1; k >= 0; --k) {
        const CVector& v = reflectors[static_cast<std::size_t>(k)];
        if (v.size() == 0)
            continue;
        const Eigen::Index len = rows - k;
        auto block = Qf.bottomRows(len);
        const Eigen::Matrix<cdouble, 1, Eigen::Dynamic> w = v.adjoint() * block;
        block.noalias() -= 2.0 * v * w;
    }

    CMatrix R = work.topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < cols; ++k) {
        const cdouble d = R(k, k);
        const double mag = std::abs(d);
        if (mag == 0.0) {
            R(k, k) = 0.0;
            continue;
        }
        const cdouble phase = d / mag;
        R.row(k) *= std::conj(phase);
        Qf.col(k) *= phase;
        R(k, k) = cdouble(mag, 0.0);
    }
    return {std::move(Qf), std::move(R)};
}

JointFactors joint_decompose(const TimeDomainChannel& channel, std::size_t num_subcarriers) {
    require(channel.num_tx() <= channel.num_rx, "joint decomposition requires M <= N");
    require(channel.H.rows() == static_cast<Eigen::Index>(channel.num_rx * channel.taps),
            "time-domain channel must have N*L rows");

    const SvdFactors h = svd(channel.H);
    // U * Sigma, (N*L) x M.
    const CMatrix scaled = h.U * h.S.cast<cdouble>().asDiagonal();

    JointFactors out;
    out.V = h.V;
    out.singular_values = h.S;
    out.per_subcarrier.reserve(num_subcarriers);
    for (std::size_t q = 0; q < num_subcarriers; ++q) {
        const CVector e = dft_selector(q, num_subcarriers, channel.taps);
        out.per_subcarrier.push_back(thin_qr(apply_selector(scaled, channel.num_rx, e)));
    }
    return out;
}

EbFactors eb_decompose(const TimeDomainChannel& channel, std::size_t num_subcarriers) {
    require(channel.num_tx() <= channel.num_rx, "eigen-beamforming decomposition requires M <= N");
    EbFactors out;
    out.per_subcarrier.reserve(num_subcarriers);
    for (std::size_t q = 0; q < num_subcarriers; ++q)
        out.per_subcarrier.push_back(svd(freq_channel(channel, q, num_subcarriers).G));
    return out;
}

double relative_error(const CMatrix& A, const CMatrix& B) {
    const double diff = (A - B).norm();
    const double ref = B.norm();
    if (ref == 0.0)
        return diff;
    return diff / ref;
}

} // namespace rfos
