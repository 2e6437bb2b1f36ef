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

#include "rfos/scheduler.hpp"

#include <cmath>

namespace rfos {

AllocationMap allocate(std::span<const FeedbackReport> reports) {
    require(!reports.empty(), "allocation needs at least one report");
    const FeedbackReport& first = reports.front();
    const std::size_t resources = first.throughputs.size();
    for (const FeedbackReport& r : reports) {
        require(r.scheme == first.scheme, "reports mix schemes " + std::string(to_string(first.scheme)) +
                                              " and " + std::string(to_string(r.scheme)));
        require(r.throughputs.size() == resources, "reports have different resource counts");
    }

    AllocationMap alloc;
    alloc.scheme = first.scheme;
    alloc.winner.resize(resources);
    alloc.scheduled.resize(resources);
    for (std::size_t q = 0; q < resources; ++q) {
        const FeedbackReport* best = &first;
        for (const FeedbackReport& r : reports) {
            const double v = r.throughputs[q];
            const double b = best->throughputs[q];
            if (v > b || (v == b && r.mt_id < best->mt_id))
                best = &r;
        }
        alloc.winner[q] = best->mt_id;
        alloc.scheduled[q] = best->throughputs[q];
    }
    return alloc;
}

std::vector<std::int64_t> subcarrier_owners(const AllocationMap& alloc, const ClusterPlan& plan) {
    if (!is_clustered(alloc.scheme)) {
        require(alloc.winner.size() == plan.num_subcarriers, "allocation does not match plan");
        return alloc.winner;
    }
    require(alloc.winner.size() == plan.num_clusters, "allocation does not match plan");
    std::vector<std::int64_t> owners(plan.num_subcarriers);
    for (std::size_t g = 0; g < plan.num_clusters; ++g)
        for (std::size_t q : plan.index_sets[g])
            owners[q] = alloc.winner[g];
    return owners;
}

double system_throughput(const AllocationMap& alloc) {
    require(!alloc.scheduled.empty(), "empty allocation");
    double sum = 0.0;
    for (double v : alloc.scheduled)
        sum += v;
    return sum / static_cast<double>(alloc.scheduled.size());
}

FeedbackBudget feedback_budget(SchemeId scheme, std::size_t num_subcarriers, std::size_t num_clusters,
                               unsigned bits) {
    const std::uint64_t Q = num_subcarriers;
    const std::uint64_t G = num_clusters;
    const std::uint64_t B = bits;
    switch (scheme) {
    case SchemeId::PS_RF_OS:
        return {B, Q, 1};
    case SchemeId::PS_EB_OS:
        return {Q * B, Q, Q};
    case SchemeId::PC_RF_OS:
        return {B, G, 1};
    case SchemeId::PC_EB_OS:
        return {G * B, G, G};
    }
    return {};
}

} // namespace rfos
