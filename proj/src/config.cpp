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

#include "rfos/config.hpp"

#include "rfos/codebook.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string>

namespace rfos {

double SimConfig::rho() const {
    return std::pow(10.0, snr_db / 10.0);
}

void SimConfig::validate() const {
    require(M >= 1 && N >= 1, "antenna counts M and N must be positive");
    require(M <= N, "M <= N violated (M=" + std::to_string(M) + ", N=" + std::to_string(N) + ")");
    require(Q >= 1, "subcarriers Q must be positive");
    require(L >= 1, "channel length L must be positive");
    require(L <= Q, "L <= Q violated (L=" + std::to_string(L) + ", Q=" + std::to_string(Q) + ")");
    require(G >= 1, "clusters G must be positive");
    require(Q % G == 0, "subcarriers Q=" + std::to_string(Q) + " not divisible by clusters G=" +
                            std::to_string(G));
    require(K >= 1, "number of MTs K must be positive");
    require(trials >= 1, "trials must be at least 1");
    require(std::isfinite(snr_db), "snr_db must be finite");
    require(exact_mode || (B < 63 && (std::size_t{1} << B) <= kDefaultCodebookCap),
            "codebook bits B=" + std::to_string(B) + " exceed the entry cap");
    require(!schemes.empty(), "at least one scheme must be selected");
    std::set<SchemeId> unique(schemes.begin(), schemes.end());
    require(unique.size() == schemes.size(), "schemes must not repeat");
}

nlohmann::json to_json(const SimConfig& c) {
    nlohmann::json schemes = nlohmann::json::array();
    for (SchemeId s : c.schemes)
        schemes.push_back(std::string(to_string(s)));
    return {{"Q", c.Q},         {"M", c.M},           {"N", c.N},
            {"L", c.L},         {"N_g", c.N_g},       {"K", c.K},
            {"B", c.B},         {"exact_mode", c.exact_mode},
            {"G", c.G},         {"snr_db", c.snr_db}, {"trials", c.trials},
            {"seed", c.seed},   {"schemes", schemes}, {"threads", c.threads}};
}

void apply_json(SimConfig& c, const nlohmann::json& j) {
    require(j.is_object(), "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "Q")
                c.Q = value.get<std::size_t>();
            else if (key == "M")
                c.M = value.get<std::size_t>();
            else if (key == "N")
                c.N = value.get<std::size_t>();
            else if (key == "L")
                c.L = value.get<std::size_t>();
            else if (key == "N_g")
                c.N_g = value.get<std::size_t>();
            else if (key == "K")
                c.K = value.get<std::size_t>();
            else if (key == "B")
                c.B = value.get<unsigned>();
            else if (key == "exact_mode")
                c.exact_mode = value.get<bool>();
            else if (key == "G")
                c.G = value.get<std::size_t>();
            else if (key == "snr_db")
                c.snr_db = value.get<double>();
            else if (key == "trials")
                c.trials = value.get<std::size_t>();
            else if (key == "seed")
                c.seed = value.get<std::uint64_t>();
            else if (key == "threads")
                c.threads = value.get<unsigned>();
            else if (key == "schemes") {
                c.schemes.clear();
                for (const auto& s : value) {
                    const auto id = parse_scheme(s.get<std::string>());
                    require(id.has_value(), "unknown scheme '" + s.get<std::string>() + "'");
                    c.schemes.push_back(*id);
                }
            } else
                throw ConfigError("unknown config field '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config field '" + key + "' has the wrong type");
        }
    }
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    apply_json(base, j);
    return base;
}

} // namespace rfos
