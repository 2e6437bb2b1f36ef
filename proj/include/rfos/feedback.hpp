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

#include "rfos/codebook.hpp"
#include "rfos/decomposition.hpp"
#include "rfos/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rfos {

// PS/PC: per-subcarrier or per-cluster throughput feedback.
// RF: one subcarrier-independent BFM (joint decomposition).
// EB: per-subcarrier eigen-beamforming BFMs.
enum class SchemeId { PS_RF_OS, PC_RF_OS, PS_EB_OS, PC_EB_OS };

inline constexpr std::array<SchemeId, 4> kAllSchemes = {SchemeId::PS_RF_OS, SchemeId::PC_RF_OS,
                                                        SchemeId::PS_EB_OS, SchemeId::PC_EB_OS};

std::string_view to_string(SchemeId scheme);
std::optional<SchemeId> parse_scheme(std::string_view name);

constexpr bool is_clustered(SchemeId s) { return s == SchemeId::PC_RF_OS || s == SchemeId::PC_EB_OS; }
constexpr bool is_reduced_feedback(SchemeId s) { return s == SchemeId::PS_RF_OS || s == SchemeId::PC_RF_OS; }

// Q subcarriers split into G runs of U adjacent subcarriers.
struct ClusterPlan {
    std::size_t num_subcarriers = 0;
    std::size_t num_clusters = 0;
    std::size_t cluster_size = 0;
    std::vector<std::vector<std::size_t>> index_sets;
};

ClusterPlan make_cluster_plan(std::size_t num_subcarriers, std::size_t num_clusters);

// What one MT sends to the BS in a slot. bfm_indices hold kExactIndex when
// the codebook is in exact mode.
struct FeedbackReport {
    std::int64_t mt_id = 0;
    SchemeId scheme = SchemeId::PS_RF_OS;
    std::vector<std::size_t> bfm_indices;
    std::vector<double> throughputs; // bits/s/Hz
    double snr = 0.0;                // linear rho
};

// sum_m log2(1 + rho * gain_m^2 * gamma_m)
double supportable_throughput(const RVector& gains, const RVector& gamma_diag, double rho);

// Joint-decomposition feedback: one BFM index, Q throughputs.
FeedbackReport rf_throughputs(const JointFactors& joint, const Codebook& codebook, double rho,
                              std::int64_t mt_id = 0);

// Eigen-beamforming feedback: Q BFM indices, Q throughputs.
FeedbackReport eb_throughputs(const EbFactors& eb, const Codebook& codebook, double rho,
                              std::int64_t mt_id = 0);

// Needed only when clustering an eigen-beamforming report, whose per-cluster
// BFM must be re-chosen and the throughputs recomputed with it.
struct EbClusterContext {
    const EbFactors& eb;
    const Codebook& codebook;
};

// Cluster averages of a per-subcarrier report.
FeedbackReport clusterize(const FeedbackReport& report, const ClusterPlan& plan,
                          const std::optional<EbClusterContext>& eb_context = std::nullopt);

// Both factorizations of one MT's channel, computed once and reused by every
// scheme.
struct MtFactors {
    JointFactors joint;
    EbFactors eb;
};

MtFactors decompose_channel(const TimeDomainChannel& channel, std::size_t num_subcarriers);

FeedbackReport compute_feedback(const MtFactors& factors, const Codebook& codebook, SchemeId scheme,
                                const ClusterPlan& plan, double rho, std::int64_t mt_id = 0);

FeedbackReport compute_feedback(const TimeDomainChannel& channel, const Codebook& codebook,
                                SchemeId scheme, const ClusterPlan& plan, double rho,
                                std::int64_t mt_id = 0);

} // namespace rfos
