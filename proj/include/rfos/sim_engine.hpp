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

#include "rfos/channel_model.hpp"
#include "rfos/codebook.hpp"
#include "rfos/config.hpp"
#include "rfos/feedback.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace rfos {

enum class SweepParam { None, K, B, G, SnrDb };

std::string_view to_string(SweepParam param);

struct Sweep {
    SweepParam param = SweepParam::None;
    std::vector<double> values; // ignored for SweepParam::None
};

// Supplies the channel of MT `mt` in trial `trial`. The default draws it from
// the (seed, trial, mt) substream.
using ChannelSource =
    std::function<ChannelTaps(const SimConfig& config, std::uint64_t trial, std::size_t mt)>;

ChannelTaps default_channel(const SimConfig& config, std::uint64_t trial, std::size_t mt);

// Seed of the shared codebook, derived from the campaign seed.
std::uint64_t codebook_seed(std::uint64_t campaign_seed);

// 2^B-entry campaign codebook, or the exact-mode book.
Codebook campaign_codebook(const SimConfig& config);

struct SchemeThroughput {
    SchemeId scheme;
    double value; // bits/s/Hz
};

// One slot: K channels, feedback for every configured scheme from the same
// channels and codebook, allocation, system throughput.
std::vector<SchemeThroughput> run_trial(const SimConfig& config, std::uint64_t trial_id,
                                        const ChannelSource& source = {});

std::vector<SchemeThroughput> run_trial(const SimConfig& config, std::uint64_t trial_id,
                                        const Codebook& codebook, const ChannelSource& source = {});

struct SummaryRow {
    SchemeId scheme = SchemeId::PS_RF_OS;
    double sweep_value = 0.0;
    SimConfig point; // config at this sweep point
    std::size_t trials = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation, 0 for a single trial
    double ci95 = 0.0;     // 1.96 std / sqrt(trials)
    double min = 0.0;
    double max = 0.0;
};

struct ThroughputSummary {
    SimConfig config;
    SweepParam param = SweepParam::None;
    std::vector<SummaryRow> rows; // sweep point major, then config.schemes order

    const SummaryRow& at(SchemeId scheme, double sweep_value) const;
};

struct CampaignOptions {
    ChannelSource source;
};

// Monte Carlo campaign. Channel substreams depend only on (seed, trial, mt),
// so every sweep point and scheme sees the same realizations: MT sets are
// nested across K and codebooks are nested across B. Output is independent of
// the worker count.
ThroughputSummary run_campaign(const SimConfig& config, const Sweep& sweep,
                               const CampaignOptions& options = {});

// Ratio of the joint-decomposition throughput to the eigen-beamforming
// throughput, both with exact BFMs, at each subcarrier whose smallest singular
// value is at least `min_singular`.
std::vector<double> throughput_ratios(const MtFactors& factors, double rho, double min_singular);

struct RatioDistribution {
    double rho = 0.0;
    std::size_t channels = 0;
    std::size_t samples = 0;
    double median_abs_dev = 0.0; // median of |ratio - 1|
    double q05 = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double q95 = 0.0;
    double max_abs_dev = 0.0;
};

struct AsymptoticResult {
    SimConfig config;
    double min_singular = 0.1;
    std::vector<RatioDistribution> per_rho;
};

AsymptoticResult asymptotic_experiment(const SimConfig& config, const std::vector<double>& rho_list,
                                       std::size_t channels, double min_singular = 0.1);

// Linear-interpolated quantile of an unsorted sample, p in [0, 1].
double quantile(std::vector<double> values, double p);

} // namespace rfos
