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

#include "rfos/types.hpp"

#include <string>
#include <vector>

namespace rfos {

struct Constellation {
    std::string name;
    std::vector<cdouble> points; // unit mean energy

    std::size_t nearest(cdouble z) const;
};

Constellation qpsk();

struct DetectionResult {
    std::vector<std::size_t> symbols; // constellation index per stream
    CVector observation;              // rotated receive vector r_q
};

// x = Vd s
CVector precode(const CVector& symbols, const CMatrix& Vd);

// r_q = Q_q^H y
CVector rf_receive(const CVector& y, const CMatrix& Qf);

// r'_q = U_q^H y
CVector eb_receive(const CVector& y, const CMatrix& U);

// Back-substitution from the last stream to the first with hard slicing after
// each layer. R must be square upper triangular with nonzero diagonal.
DetectionResult vblast_detect(const CVector& r, const CMatrix& R, const Constellation& constellation);

} // namespace rfos
