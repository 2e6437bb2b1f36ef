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

#include "rfos/sim_engine.hpp"

#include "rfos/rng.hpp"
#include "rfos/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace rfos {

std::string_view to_string(SweepParam param) {
    switch (param) {
    case SweepParam::None:
        return "none";
    case SweepParam::K:
        return "K";
    case SweepParam::B:
        return "B";
    case SweepParam::G:
        return "G";
    case SweepParam::SnrDb:
        return "snr_db";
    }
    return "?";
}

ChannelTaps default_channel(const SimConfig& config, std::uint64_t trial, std::size_t mt) {
    auto stream = rng::make_stream(config.seed, rng::Domain::Channel, trial, mt);
    return generate_taps(make_pdp(config.L), config.M, config.N, stream, static_cast<std::int64_t>(mt),
                         static_cast<std::int64_t>(trial));
}

std::uint64_t codebook_seed(std::uint64_t campaign_seed) {
    return rng::substream_key(campaign_seed, rng::Domain::Codebook, 0);
}

Codebook campaign_codebook(const SimConfig& config) {
    if (config.exact_mode)
        return exact_codebook(config.M);
    return generate_codebook(config.B, config.M, codebook_seed(config.seed));
}

const SummaryRow& ThroughputSummary::at(SchemeId scheme, double sweep_value) const {
    for (const SummaryRow& r : rows)
        if (r.scheme == scheme && r.sweep_value == sweep_value)
            return r;
    throw ConfigError("no summary row for " + std::string(rfos::to_string(scheme)));
}

namespace {

std::vector<MtFactors> trial_factors(const SimConfig& config, std::uint64_t trial, std::size_t num_mts,
                                     const ChannelSource& source) {
    std::vector<MtFactors> factors;
    factors.reserve(num_mts);
    for (std::size_t k = 0; k < num_mts; ++k) {
        const ChannelTaps taps = source ? source(config, trial, k) : default_channel(config, trial, k);
        require(taps.num_tx() == config.M && taps.num_rx() == config.N && taps.length() == config.L,
                "channel source returned taps with the wrong shape");
        factors.push_back(decompose_channel(build_H(taps), config.Q));
    }
    return factors;
}

std::vector<FeedbackReport> reports_for(const std::vector<MtFactors>& factors, std::size_t num_mts,
                                        const Codebook& codebook, SchemeId scheme,
                                        const ClusterPlan& plan, double rho) {
    std::vector<FeedbackReport> reports;
    reports.reserve(num_mts);
    for (std::size_t k = 0; k < num_mts; ++k)
        reports.push_back(
            compute_feedback(factors[k], codebook, scheme, plan, rho, static_cast<std::int64_t>(k)));
    return reports;
}

SimConfig point_config(const SimConfig& base, SweepParam param, double value) {
    const bool integral = std::isfinite(value) && value == std::floor(value);
    if (param == SweepParam::K || param == SweepParam::G)
        require(integral && value >= 1.0,
                "sweep values for " + std::string(to_string(param)) + " must be positive integers");
    if (param == SweepParam::B)
        require(integral && value >= 0.0 && value < 63.0, "sweep values for B must be integers in [0, 62]");

    SimConfig c = base;
    switch (param) {
    case SweepParam::None:
        break;
    case SweepParam::K:
        c.K = static_cast<std::size_t>(value);
        break;
    case SweepParam::B:
        c.B = static_cast<unsigned>(value);
        break;
    case SweepParam::G:
        c.G = static_cast<std::size_t>(value);
        break;
    case SweepParam::SnrDb:
        c.snr_db = value;
        break;
    }
    c.validate();
    return c;
}

} // namespace

std::vector<SchemeThroughput> run_trial(const SimConfig& config, std::uint64_t trial_id,
                                        const Codebook& codebook, const ChannelSource& source) {
    config.validate();
    const auto factors = trial_factors(config, trial_id, config.K, source);
    const ClusterPlan plan = make_cluster_plan(config.Q, config.G);
    std::vector<SchemeThroughput> out;
    for (SchemeId scheme : config.schemes) {
        const auto reports = reports_for(factors, config.K, codebook, scheme, plan, config.rho());
        out.push_back({scheme, system_throughput(allocate(reports))});
    }
    return out;
}

std::vector<SchemeThroughput> run_trial(const SimConfig& config, std::uint64_t trial_id,
                                        const ChannelSource& source) {
    config.validate();
    return run_trial(config, trial_id, campaign_codebook(config), source);
}

ThroughputSummary run_campaign(const SimConfig& config, const Sweep& sweep,
                               const CampaignOptions& options) {
    config.validate();
    const SweepParam param = sweep.param;
    std::vector<double> values = sweep.values;
    if (param == SweepParam::None)
        values = {0.0};
    require(!values.empty(), "sweep has no values");

    std::vector<SimConfig> points;
    for (double v : values)
        points.push_back(point_config(config, param, v));

    // Codebooks: one per point, nested prefixes of the largest book for a B sweep.
    std::vector<Codebook> books;
    if (param == SweepParam::B && !config.exact_mode) {
        unsigned max_bits = 0;
        for (const SimConfig& p : points)
            max_bits = std::max(max_bits, p.B);
        const Codebook master = generate_codebook(max_bits, config.M, codebook_seed(config.seed));
        for (const SimConfig& p : points)
            books.push_back(master.prefix(p.B));
    } else {
        books.assign(1, campaign_codebook(config));
    }
    auto book_for = [&](std::size_t p) -> const Codebook& { return books.size() == 1 ? books[0] : books[p]; };

    std::size_t max_mts = 0;
    for (const SimConfig& p : points)
        max_mts = std::max(max_mts, p.K);

    const std::size_t num_points = points.size();
    const std::size_t num_schemes = config.schemes.size();
    // results[trial][point * num_schemes + scheme]
    std::vector<std::vector<double>> results(config.trials);

    auto run_one = [&](std::uint64_t trial) {
        const auto factors = trial_factors(config, trial, max_mts, options.source);
        std::vector<double> row(num_points * num_schemes);
        if (param == SweepParam::K) {
            // Feedback does not depend on K; allocate over nested MT prefixes.
            const ClusterPlan plan = make_cluster_plan(config.Q, config.G);
            for (std::size_t s = 0; s < num_schemes; ++s) {
                const auto reports =
                    reports_for(factors, max_mts, books[0], config.schemes[s], plan, config.rho());
                for (std::size_t p = 0; p < num_points; ++p) {
                    const std::span<const FeedbackReport> subset(reports.data(), points[p].K);
                    row[p * num_schemes + s] = system_throughput(allocate(subset));
                }
            }
        } else {
            for (std::size_t p = 0; p < num_points; ++p) {
                const SimConfig& pc = points[p];
                const ClusterPlan plan = make_cluster_plan(pc.Q, pc.G);
                for (std::size_t s = 0; s < num_schemes; ++s) {
                    const auto reports =
                        reports_for(factors, pc.K, book_for(p), config.schemes[s], plan, pc.rho());
                    row[p * num_schemes + s] = system_throughput(allocate(reports));
                }
            }
        }
        results[trial] = std::move(row);
    };

    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.trials));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= config.trials)
                return;
            try {
                run_one(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = config.trials;
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    ThroughputSummary summary;
    summary.config = config;
    summary.param = param;
    const auto n = static_cast<double>(config.trials);
    for (std::size_t p = 0; p < num_points; ++p) {
        for (std::size_t s = 0; s < num_schemes; ++s) {
            const std::size_t col = p * num_schemes + s;
            SummaryRow row;
            row.scheme = config.schemes[s];
            row.sweep_value = values[p];
            row.point = points[p];
            row.trials = config.trials;
            row.min = results[0][col];
            row.max = results[0][col];
            double sum = 0.0;
            for (const auto& r : results) {
                sum += r[col];
                row.min = std::min(row.min, r[col]);
                row.max = std::max(row.max, r[col]);
            }
            row.mean = sum / n;
            if (config.trials > 1) {
                double ss = 0.0;
                for (const auto& r : results)
                    ss += (r[col] - row.mean) * (r[col] - row.mean);
                row.std_dev = std::sqrt(ss / (n - 1.0));
                row.ci95 = 1.96 * row.std_dev / std::sqrt(n);
            }
            summary.rows.push_back(std::move(row));
        }
    }
    return summary;
}

std::vector<double> throughput_ratios(const MtFactors& factors, double rho, double min_singular) {
    std::vector<double> ratios;
    const std::size_t Q = factors.joint.per_subcarrier.size();
    require(factors.eb.per_subcarrier.size() == Q, "factor sets disagree on Q");
    for (std::size_t q = 0; q < Q; ++q) {
        const SvdFactors& eb = factors.eb.per_subcarrier[q];
        if (eb.S[eb.S.size() - 1] < min_singular)
            continue;
        const RVector ones = RVector::Ones(eb.S.size());
        const double joint = supportable_throughput(factors.joint.per_subcarrier[q].R.diagonal().real(), ones, rho);
        const double eigen = supportable_throughput(eb.S, ones, rho);
        ratios.push_back(joint / eigen);
    }
    return ratios;
}

double quantile(std::vector<double> values, double p) {
    require(!values.empty(), "quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

AsymptoticResult asymptotic_experiment(const SimConfig& config, const std::vector<double>& rho_list,
                                       std::size_t channels, double min_singular) {
    config.validate();
    require(!rho_list.empty(), "asymptotic experiment needs at least one rho");
    require(channels >= 1, "asymptotic experiment needs at least one channel");
    for (double rho : rho_list)
        require(std::isfinite(rho) && rho > 0.0, "rho values must be positive");

    const PowerDelayProfile pdp = make_pdp(config.L);
    std::vector<MtFactors> factors;
    factors.reserve(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        auto stream = rng::make_stream(config.seed, rng::Domain::Asymptotic, c);
        const ChannelTaps taps = generate_taps(pdp, config.M, config.N, stream, 0, static_cast<std::int64_t>(c));
        factors.push_back(decompose_channel(build_H(taps), config.Q));
    }

    AsymptoticResult result;
    result.config = config;
    result.min_singular = min_singular;
    for (double rho : rho_list) {
        std::vector<double> ratios;
        for (const MtFactors& f : factors) {
            const auto r = throughput_ratios(f, rho, min_singular);
            ratios.insert(ratios.end(), r.begin(), r.end());
        }
        RatioDistribution dist;
        dist.rho = rho;
        dist.channels = channels;
        dist.samples = ratios.size();
        if (!ratios.empty()) {
            std::vector<double> dev;
            dev.reserve(ratios.size());
            for (double r : ratios)
                dev.push_back(std::abs(r - 1.0));
            dist.median_abs_dev = quantile(dev, 0.5);
            dist.max_abs_dev = *std::max_element(dev.begin(), dev.end());
            dist.q05 = quantile(ratios, 0.05);
            dist.q25 = quantile(ratios, 0.25);
            dist.q50 = quantile(ratios, 0.5);
            dist.q75 = quantile(ratios, 0.75);
            dist.q95 = quantile(ratios, 0.95);
        }
        result.per_rho.push_back(dist);
    }
    return result;
}

} // namespace rfos
