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
#include <random>

namespace rfos::rng {

// Stream domains. Each domain owns a disjoint family of substreams so that,
// for example, channel draws never overlap codebook draws.
enum class Domain : std::uint64_t {
    Channel = 1,
    Codebook = 2,
    Asymptotic = 3,
    Test = 4,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Key for substream (seed, domain, a, b). Pure function of its arguments, so
// the stream for trial t / MT k is the same no matter which worker asks for it
// or in what order.
constexpr std::uint64_t substream_key(std::uint64_t seed, Domain domain, std::uint64_t a,
                                      std::uint64_t b = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ static_cast<std::uint64_t>(domain));
    h = mix64(h ^ a);
    h = mix64(h ^ (b + 0x632BE59BD9B4E019ULL));
    return h;
}

using Engine = std::mt19937_64;

inline Engine make_stream(std::uint64_t seed, Domain domain, std::uint64_t a, std::uint64_t b = 0) {
    return Engine(substream_key(seed, domain, a, b));
}

} // namespace rfos::rng
