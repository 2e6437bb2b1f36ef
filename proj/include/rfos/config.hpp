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

#include "rfos/feedback.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace rfos {

// Simulation parameters. Defaults are the reference operating point:
// 128 subcarriers, 2x2 antennas, 8-tap channel, 10 MTs, 8-bit codebook,
// 8 clusters, 10 dB.
struct SimConfig {
    std::size_t Q = 128;
    std::size_t M = 2;
    std::size_t N = 2;
    std::size_t L = 8;
    std::size_t N_g = 8; // cyclic prefix length; carried for reference only
    std::size_t K = 10;
    unsigned B = 8;
    bool exact_mode = false;
    std::size_t G = 8;
    double snr_db = 10.0;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    unsigned threads = 0; // 0: hardware concurrency

    double rho() const;
    std::size_t cluster_size() const { return Q / G; }

    // Throws ConfigError naming the first violated constraint.
    void validate() const;
};

nlohmann::json to_json(const SimConfig& config);

// Overlays the fields present in `j` onto `config`. Unknown fields are
// rejected.
void apply_json(SimConfig& config, const nlohmann::json& j);

SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

} // namespace rfos
