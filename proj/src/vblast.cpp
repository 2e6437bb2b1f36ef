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

#include "rfos/vblast.hpp"

#include <cmath>
#include <limits>

namespace rfos {

std::size_t Constellation::nearest(cdouble z) const {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = std::norm(z - points[i]);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

Constellation qpsk() {
    const double a = 1.0 / std::sqrt(2.0);
    return {"QPSK", {{a, a}, {-a, a}, {-a, -a}, {a, -a}}};
}

CVector precode(const CVector& symbols, const CMatrix& Vd) {
    require(Vd.cols() == symbols.size(), "precoder width does not match the symbol vector");
    return Vd * symbols;
}

CVector rf_receive(const CVector& y, const CMatrix& Qf) {
    require(Qf.rows() == y.size(), "receive rotation does not match the receive vector");
    return Qf.adjoint() * y;
}

CVector eb_receive(const CVector& y, const CMatrix& U) {
    require(U.rows() == y.size(), "receive rotation does not match the receive vector");
    return U.adjoint() * y;
}

DetectionResult vblast_detect(const CVector& r, const CMatrix& R, const Constellation& constellation) {
    require(R.rows() == R.cols() && R.rows() == r.size(), "R must be square and match r");
    require(!constellation.points.empty(), "empty constellation");
    const Eigen::Index M = R.rows();

    DetectionResult out;
    out.observation = r;
    out.symbols.assign(static_cast<std::size_t>(M), 0);
    CVector decided = CVector::Zero(M);
    for (Eigen::Index m = M - 1; m >= 0; --m) {
        const cdouble diag = R(m, m);
        if (std::abs(diag) == 0.0)
            throw NumericError("singular stream " + std::to_string(m) + " in V-BLAST detection");
        cdouble z = r[m];
        for (Eigen::Index j = m + 1; j < M; ++j)
            z -= R(m, j) * decided[j];
        z /= diag;
        const std::size_t idx = constellation.nearest(z);
        out.symbols[static_cast<std::size_t>(m)] = idx;
        decided[m] = constellation.points[idx];
    }
    return out;
}

} // namespace rfos
