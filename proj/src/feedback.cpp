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

#include "rfos/feedback.hpp"

#include <cmath>

namespace rfos {

std::string_view to_string(SchemeId scheme) {
    switch (scheme) {
    case SchemeId::PS_RF_OS:
        return "PS_RF_OS";
    case SchemeId::PC_RF_OS:
        return "PC_RF_OS";
    case SchemeId::PS_EB_OS:
        return "PS_EB_OS";
    case SchemeId::PC_EB_OS:
        return "PC_EB_OS";
    }
    return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
    for (SchemeId s : kAllSchemes) {
        if (to_string(s) == name)
            return s;
    }
    return std::nullopt;
}

ClusterPlan make_cluster_plan(std::size_t num_subcarriers, std::size_t num_clusters) {
    require(num_subcarriers >= 1, "number of subcarriers must be positive");
    require(num_clusters >= 1, "number of clusters must be positive");
    require(num_subcarriers % num_clusters == 0,
            "subcarriers Q=" + std::to_string(num_subcarriers) + " not divisible by clusters G=" +
                std::to_string(num_clusters));
    ClusterPlan plan;
    plan.num_subcarriers = num_subcarriers;
    plan.num_clusters = num_clusters;
    plan.cluster_size = num_subcarriers / num_clusters;
    plan.index_sets.resize(num_clusters);
    for (std::size_t g = 0; g < num_clusters; ++g)
        for (std::size_t u = 0; u < plan.cluster_size; ++u)
            plan.index_sets[g].push_back(g * plan.cluster_size + u);
    return plan;
}

double supportable_throughput(const RVector& gains, const RVector& gamma_diag, double rho) {
    double total = 0.0;
    for (Eigen::Index m = 0; m < gains.size(); ++m)
        total += std::log2(1.0 + rho * gains[m] * gains[m] * gamma_diag[m]);
    return total;
}

namespace {

void check_rho(double rho) {
    require(std::isfinite(rho) && rho > 0.0, "SNR rho must be positive and finite");
}

RVector r_diagonal(const QrFactors& qr) {
    return qr.R.diagonal().real();
}

double eb_throughput_with(const SvdFactors& f, const Codebook& codebook, std::size_t index, double rho) {
    const RVector gamma = alignment_gamma(f.V, codebook, index).diagonal();
    return supportable_throughput(f.S, gamma, rho);
}

} // namespace

FeedbackReport rf_throughputs(const JointFactors& joint, const Codebook& codebook, double rho,
                              std::int64_t mt_id) {
    check_rho(rho);
    FeedbackReport report;
    report.mt_id = mt_id;
    report.scheme = SchemeId::PS_RF_OS;
    report.snr = rho;

    const std::size_t d = select_bfm(joint.V, codebook);
    report.bfm_indices = {d};
    const RVector gamma = alignment_gamma(joint.V, codebook, d).diagonal();
    report.throughputs.reserve(joint.per_subcarrier.size());
    for (const QrFactors& qr : joint.per_subcarrier)
        report.throughputs.push_back(supportable_throughput(r_diagonal(qr), gamma, rho));
    return report;
}

FeedbackReport eb_throughputs(const EbFactors& eb, const Codebook& codebook, double rho,
                              std::int64_t mt_id) {
    check_rho(rho);
    FeedbackReport report;
    report.mt_id = mt_id;
    report.scheme = SchemeId::PS_EB_OS;
    report.snr = rho;
    report.bfm_indices.reserve(eb.per_subcarrier.size());
    report.throughputs.reserve(eb.per_subcarrier.size());
    for (const SvdFactors& f : eb.per_subcarrier) {
        const std::size_t d = select_bfm(f.V, codebook);
        report.bfm_indices.push_back(d);
        report.throughputs.push_back(eb_throughput_with(f, codebook, d, rho));
    }
    return report;
}

FeedbackReport clusterize(const FeedbackReport& report, const ClusterPlan& plan,
                          const std::optional<EbClusterContext>& eb_context) {
    require(!is_clustered(report.scheme), "report is already per-cluster");
    require(report.throughputs.size() == plan.num_subcarriers,
            "report length " + std::to_string(report.throughputs.size()) +
                " does not match cluster plan Q=" + std::to_string(plan.num_subcarriers));

    FeedbackReport out;
    out.mt_id = report.mt_id;
    out.snr = report.snr;
    out.throughputs.reserve(plan.num_clusters);
    const double inv_size = 1.0 / static_cast<double>(plan.cluster_size);

    if (report.scheme == SchemeId::PS_RF_OS) {
        out.scheme = SchemeId::PC_RF_OS;
        out.bfm_indices = report.bfm_indices;
        for (const auto& set : plan.index_sets) {
            double sum = 0.0;
            for (std::size_t q : set)
                sum += report.throughputs[q];
            out.throughputs.push_back(sum * inv_size);
        }
        return out;
    }

    require(eb_context.has_value(), "clustering an eigen-beamforming report needs its factors");
    const EbFactors& eb = eb_context->eb;
    const Codebook& codebook = eb_context->codebook;
    require(eb.per_subcarrier.size() == plan.num_subcarriers, "factors do not match cluster plan");

    out.scheme = SchemeId::PC_EB_OS;
    out.bfm_indices.reserve(plan.num_clusters);
    std::vector<CMatrix> cluster_bfms;
    for (const auto& set : plan.index_sets) {
        cluster_bfms.clear();
        for (std::size_t q : set)
            cluster_bfms.push_back(eb.per_subcarrier[q].V);
        const std::size_t d = select_bfm_cluster(cluster_bfms, codebook);
        double sum = 0.0;
        for (std::size_t q : set) {
            const SvdFactors& f = eb.per_subcarrier[q];
            sum += supportable_throughput(f.S, alignment_gamma(f.V, codebook, d).diagonal(), report.snr);
        }
        out.bfm_indices.push_back(d);
        out.throughputs.push_back(sum * inv_size);
    }
    return out;
}

MtFactors decompose_channel(const TimeDomainChannel& channel, std::size_t num_subcarriers) {
    return {joint_decompose(channel, num_subcarriers), eb_decompose(channel, num_subcarriers)};
}

FeedbackReport compute_feedback(const MtFactors& factors, const Codebook& codebook, SchemeId scheme,
                                const ClusterPlan& plan, double rho, std::int64_t mt_id) {
    switch (scheme) {
    case SchemeId::PS_RF_OS:
        return rf_throughputs(factors.joint, codebook, rho, mt_id);
    case SchemeId::PC_RF_OS:
        return clusterize(rf_throughputs(factors.joint, codebook, rho, mt_id), plan);
    case SchemeId::PS_EB_OS:
        return eb_throughputs(factors.eb, codebook, rho, mt_id);
    case SchemeId::PC_EB_OS: {
        // Per-subcarrier throughputs are recomputed with the cluster BFM, so
        // only the report shell of the PS report is needed here.
        check_rho(rho);
        FeedbackReport shell;
        shell.mt_id = mt_id;
        shell.scheme = SchemeId::PS_EB_OS;
        shell.snr = rho;
        shell.throughputs.assign(factors.eb.per_subcarrier.size(), 0.0);
        return clusterize(shell, plan, EbClusterContext{factors.eb, codebook});
    }
    }
    throw ConfigError("unknown scheme");
}

FeedbackReport compute_feedback(const TimeDomainChannel& channel, const Codebook& codebook,
                                SchemeId scheme, const ClusterPlan& plan, double rho,
                                std::int64_t mt_id) {
    return compute_feedback(decompose_channel(channel, plan.num_subcarriers), codebook, scheme, plan,
                            rho, mt_id);
}

} // namespace rfos
