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
#include "rfos/types.hpp"

#include <vector>

namespace rfos {

// Thin SVD A = U diag(S) V^H with S sorted nonincreasing.
struct SvdFactors {
    CMatrix U;
    RVector S;
    CMatrix V;
};

// Thin QR A = Qf R; Qf has orthonormal columns, R is square upper triangular
// with a real nonnegative diagonal.
struct QrFactors {
    CMatrix Qf;
    CMatrix R;
};

// Subcarrier-independent BFM V plus the per-subcarrier (Q_q, R_q) such that
// G_q = Q_q R_q V^H.
struct JointFactors {
    CMatrix V;
    RVector singular_values;
    std::vector<QrFactors> per_subcarrier;
};

// Per-subcarrier SVD of G_q.
struct EbFactors {
    std::vector<SvdFactors> per_subcarrier;
};

SvdFactors svd(const CMatrix& A);

// Requires rows >= cols.
QrFactors thin_qr(const CMatrix& A);

JointFactors joint_decompose(const TimeDomainChannel& channel, std::size_t num_subcarriers);

EbFactors eb_decompose(const TimeDomainChannel& channel, std::size_t num_subcarriers);

// Frobenius norm of A - B relative to ||B||, with 0/0 treated as 0.
double relative_error(const CMatrix& A, const CMatrix& B);

} // namespace rfos
