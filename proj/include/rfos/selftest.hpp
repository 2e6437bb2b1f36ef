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

#include <cstdint>
#include <iosfwd>

namespace rfos {

struct SelftestOptions {
    std::uint64_t seed = 20260101;
    std::size_t determinant_channels = 100;
    // Negates the leading diagonal entry of every R_q before checking; used
    // to confirm that the suite notices a broken factorization.
    bool inject_fault = false;
};

// Fast invariant suite. Prints one PASS/FAIL line per check and returns 0 iff
// every check passes, 1 otherwise.
int run_selftest(std::ostream& os, const SelftestOptions& options = {});

} // namespace rfos
