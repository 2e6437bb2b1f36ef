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

#include "rfos/selftest.hpp"

#include "rfos/channel_model.hpp"
#include "rfos/decomposition.hpp"
#include "rfos/feedback.hpp"
#include "rfos/format.hpp"
#include "rfos/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace rfos {

namespace {

struct Tally {
    std::ostream& os;
    std::size_t failed = 0;

    void report(bool ok, const std::string& name, const std::string& detail) {
        os << (ok ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
        if (!ok)
            ++failed;
    }
};

TimeDomainChannel random_channel(std::uint64_t seed, std::uint64_t index, std::size_t M, std::size_t N,
                                 std::size_t L) {
    auto stream = rng::make_stream(seed, rng::Domain::Test, index);
    return build_H(generate_taps(make_pdp(L), M, N, stream));
}

double max_vector_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        return INFINITY;
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

int run_selftest(std::ostream& os, const SelftestOptions& options) {
    Tally tally{os};
    constexpr std::size_t Q = 16;
    constexpr std::size_t M = 2;
    constexpr std::size_t N = 2;
    constexpr std::size_t L = 8;

    // Reconstruction G_q = Q_q R_q V^H and unitarity of the factors.
    for (std::size_t c = 0; c < 10; ++c) {
        const TimeDomainChannel ch = random_channel(options.seed, c, M, N, L);
        JointFactors joint = joint_decompose(ch, Q);
        double recon = 0.0;
        double unit = (joint.V.adjoint() * joint.V - CMatrix::Identity(M, M)).norm();
        for (std::size_t q = 0; q < Q; ++q) {
            QrFactors& f = joint.per_subcarrier[q];
            if (options.inject_fault)
                f.R(0, 0) = -f.R(0, 0);
            const CMatrix G = freq_channel(ch, q, Q).G;
            recon = std::max(recon, relative_error(f.Qf * f.R * joint.V.adjoint(), G));
            unit = std::max(unit, (f.Qf.adjoint() * f.Qf - CMatrix::Identity(M, M)).norm());
        }
        tally.report(recon <= 1e-9 && unit <= 1e-10, "joint-reconstruction",
                     "channel=" + std::to_string(c) + " rel_err=" + format_double(recon) +
                         " unitarity_err=" + format_double(unit));
    }

    // Product of R_q diagonal equals product of singular values of G_q.
    for (std::size_t c = 0; c < options.determinant_channels; ++c) {
        const TimeDomainChannel ch = random_channel(options.seed, 1000 + c, M, N, L);
        JointFactors joint = joint_decompose(ch, Q);
        const EbFactors eb = eb_decompose(ch, Q);
        double worst = 0.0;
        for (std::size_t q = 0; q < Q; ++q) {
            if (options.inject_fault)
                joint.per_subcarrier[q].R(0, 0) = -joint.per_subcarrier[q].R(0, 0);
            const RVector& s = eb.per_subcarrier[q].S;
            if (s[s.size() - 1] <= 1e-8)
                continue;
            const double lhs = joint.per_subcarrier[q].R.diagonal().real().prod();
            const double rhs = s.prod();
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        tally.report(worst <= 1e-9, "determinant-identity",
                     "channel=" + std::to_string(c) + " max_rel_err=" + format_double(worst));
    }

    // Clustering degeneracies.
    {
        const Codebook cb = generate_codebook(4, M, options.seed);
        const TimeDomainChannel ch = random_channel(options.seed, 5000, M, N, L);
        const MtFactors f = decompose_channel(ch, Q);
        const ClusterPlan unit_plan = make_cluster_plan(Q, Q);
        const auto ps_rf = compute_feedback(f, cb, SchemeId::PS_RF_OS, unit_plan, 10.0);
        const auto pc_rf = compute_feedback(f, cb, SchemeId::PC_RF_OS, unit_plan, 10.0);
        const auto ps_eb = compute_feedback(f, cb, SchemeId::PS_EB_OS, unit_plan, 10.0);
        const auto pc_eb = compute_feedback(f, cb, SchemeId::PC_EB_OS, unit_plan, 10.0);
        const double d_rf = max_vector_diff(ps_rf.throughputs, pc_rf.throughputs);
        const double d_eb = max_vector_diff(ps_eb.throughputs, pc_eb.throughputs);
        tally.report(d_rf <= 1e-12 && d_eb <= 1e-12, "cluster-size-one",
                     "rf_diff=" + format_double(d_rf) + " eb_diff=" + format_double(d_eb));

        const TimeDomainChannel flat = random_channel(options.seed, 5001, M, N, 1);
        const MtFactors ff = decompose_channel(flat, Q);
        const auto flat_ps = compute_feedback(ff, cb, SchemeId::PS_RF_OS, unit_plan, 10.0);
        double spread = 0.0;
        for (double v : flat_ps.throughputs)
            spread = std::max(spread, std::abs(v - flat_ps.throughputs.front()));
        double worst = 0.0;
        for (std::size_t G : {1, 2, 4, 8, 16}) {
            const ClusterPlan plan = make_cluster_plan(Q, G);
            const auto pc = compute_feedback(ff, cb, SchemeId::PC_RF_OS, plan, 10.0);
            const auto pce = compute_feedback(ff, cb, SchemeId::PC_EB_OS, plan, 10.0);
            const auto pse = compute_feedback(ff, cb, SchemeId::PS_EB_OS, plan, 10.0);
            for (std::size_t g = 0; g < G; ++g) {
                worst = std::max(worst, std::abs(pc.throughputs[g] - flat_ps.throughputs.front()));
                worst = std::max(worst, std::abs(pce.throughputs[g] - pse.throughputs.front()));
            }
        }
        tally.report(spread <= 1e-12 && worst <= 1e-12, "flat-channel-clustering",
                     "spread=" + format_double(spread) + " max_diff=" + format_double(worst));
    }

    os << (tally.failed == 0 ? "selftest: all checks passed\n"
                             : "selftest: " + std::to_string(tally.failed) + " check(s) failed\n");
    return tally.failed == 0 ? 0 : 1;
}

} // namespace rfos
