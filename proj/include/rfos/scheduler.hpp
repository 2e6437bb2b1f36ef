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

#include <cstdint>
#include <span>
#include <vector>

namespace rfos {

// Winner and scheduled throughput per resource (subcarrier for PS schemes,
// cluster for PC schemes).
struct AllocationMap {
    SchemeId scheme = SchemeId::PS_RF_OS;
    std::vector<std::int64_t> winner;
    std::vector<double> scheduled;
};

// Max-throughput assignment, ties to the lowest mt_id.
AllocationMap allocate(std::span<const FeedbackReport> reports);

// Owner of each subcarrier; a cluster winner owns all of its subcarriers.
std::vector<std::int64_t> subcarrier_owners(const AllocationMap& alloc, const ClusterPlan& plan);

// Mean scheduled throughput over resources, bits/s/Hz per subcarrier.
double system_throughput(const AllocationMap& alloc);

// Feedback per MT per slot: B-bit BFM indices and real-valued throughputs,
// counted separately.
struct FeedbackBudget {
    std::uint64_t index_bits = 0;
    std::uint64_t real_scalars = 0;
    std::uint64_t indices = 0; // number of BFM indices behind index_bits

    // Each index counted as one scalar.
    std::uint64_t scalar_count() const { return indices + real_scalars; }
};

FeedbackBudget feedback_budget(SchemeId scheme, std::size_t num_subcarriers, std::size_t num_clusters,
                               unsigned bits);

} // namespace rfos
