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

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace rfos;

namespace {

ChannelTaps unit_flat_channel(const SimConfig& config, std::uint64_t trial, std::size_t mt) {
    ChannelTaps t(config.M, config.N, config.L, static_cast<std::int64_t>(mt), static_cast<std::int64_t>(trial));
    t.tap(0, 0)[0] = 1.0;
    return t;
}

SimConfig small_config() {
    SimConfig c;
    c.Q = 32;
    c.G = 4;
    c.K = 4;
    c.B = 4;
    c.trials = 12;
    c.threads = 1;
    return c;
}

} // namespace

TEST_CASE("unit flat channel gives log2(1 + rho) for every scheme") {
    SimConfig c;
    c.Q = 8;
    c.G = 2;
    c.M = c.N = c.L = 1;
    c.K = 1;
    c.exact_mode = true;
    c.snr_db = 10.0;
    c.trials = 3;
    CampaignOptions opts;
    opts.source = unit_flat_channel;
    const auto summary = run_campaign(c, {}, opts);
    REQUIRE(summary.rows.size() == 4);
    for (const auto& row : summary.rows) {
        CHECK(std::abs(row.mean - std::log2(11.0)) <= 1e-12);
        CHECK(row.std_dev <= 1e-12);
    }
}

TEST_CASE("campaign is deterministic and independent of thread count") {
    auto c = small_config();
    const auto a = run_campaign(c, {});
    const auto b = run_campaign(c, {});
    c.threads = 3;
    const auto d = run_campaign(c, {});
    REQUIRE(a.rows.size() == 4);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean == b.rows[i].mean);
        CHECK(a.rows[i].mean == d.rows[i].mean);
        CHECK(a.rows[i].std_dev == d.rows[i].std_dev);
    }
}

TEST_CASE("one subcarrier per cluster makes PC equal PS") {
    auto c = small_config();
    c.G = c.Q;
    const auto s = run_campaign(c, {});
    CHECK(s.at(SchemeId::PC_RF_OS, 0).mean == doctest::Approx(s.at(SchemeId::PS_RF_OS, 0).mean).epsilon(1e-12));
    CHECK(s.at(SchemeId::PC_EB_OS, 0).mean == doctest::Approx(s.at(SchemeId::PS_EB_OS, 0).mean).epsilon(1e-12));
}

TEST_CASE("single trial has zero spread") {
    auto c = small_config();
    c.trials = 1;
    for (const auto& row : run_campaign(c, {}).rows) {
        CHECK(row.std_dev == 0.0);
        CHECK(row.ci95 == 0.0);
        CHECK(row.min == row.max);
    }
}

TEST_CASE("summary statistics match the per-trial values") {
    auto c = small_config();
    c.trials = 5;
    const auto codebook = campaign_codebook(c);
    std::vector<double> ps_rf;
    for (std::uint64_t t = 0; t < 5; ++t)
        for (const auto& st : run_trial(c, t, codebook))
            if (st.scheme == SchemeId::PS_RF_OS)
                ps_rf.push_back(st.value);
    double mean = 0.0;
    for (double v : ps_rf)
        mean += v / 5.0;
    double var = 0.0;
    for (double v : ps_rf)
        var += (v - mean) * (v - mean) / 4.0;
    const auto& row = run_campaign(c, {}).at(SchemeId::PS_RF_OS, 0);
    CHECK(row.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(row.std_dev == doctest::Approx(std::sqrt(var)).epsilon(1e-10));
    CHECK(row.ci95 == doctest::Approx(1.96 * std::sqrt(var) / std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("K sweep is nondecreasing per scheme") {
    auto c = small_config();
    const auto s = run_campaign(c, {SweepParam::K, {1, 2, 3, 4, 6}});
    for (auto scheme : kAllSchemes) {
        double prev = 0.0;
        for (double k : {1, 2, 3, 4, 6}) {
            const double m = s.at(scheme, k).mean;
            CHECK(m >= prev - 1e-12);
            prev = m;
        }
    }
}

TEST_CASE("K sweep point equals a plain run at that K") {
    auto c = small_config();
    const auto sweep = run_campaign(c, {SweepParam::K, {2, 4}});
    c.K = 2;
    const auto single = run_campaign(c, {});
    for (auto scheme : kAllSchemes)
        CHECK(sweep.at(scheme, 2).mean == doctest::Approx(single.at(scheme, 0).mean).epsilon(1e-12));
}

TEST_CASE("nested B sweep is nondecreasing, exact mode is constant") {
    auto c = small_config();
    const auto s = run_campaign(c, {SweepParam::B, {1, 2, 4, 6}});
    for (auto scheme : {SchemeId::PS_RF_OS, SchemeId::PS_EB_OS}) {
        double prev = 0.0;
        for (double b : {1, 2, 4, 6}) {
            CHECK(s.at(scheme, b).mean >= prev - 1e-12);
            prev = s.at(scheme, b).mean;
        }
    }
    c.exact_mode = true;
    const auto e = run_campaign(c, {SweepParam::B, {1, 4}});
    for (auto scheme : kAllSchemes)
        CHECK(e.at(scheme, 1).mean == e.at(scheme, 4).mean);
}

TEST_CASE("worker exceptions propagate") {
    auto c = small_config();
    CampaignOptions opts;
    opts.source = [](const SimConfig&, std::uint64_t trial, std::size_t) -> ChannelTaps {
        if (trial == 7)
            throw NumericError("bad channel");
        return ChannelTaps(2, 2, 8);
    };
    CHECK_THROWS_AS(run_campaign(c, {}, opts), NumericError);
}

TEST_CASE("invalid sweep values are rejected") {
    auto c = small_config();
    CHECK_THROWS_AS(run_campaign(c, {SweepParam::K, {0}}), ConfigError);
    CHECK_THROWS_AS(run_campaign(c, {SweepParam::K, {2.5}}), ConfigError);
    CHECK_THROWS_AS(run_campaign(c, {SweepParam::G, {3}}), ConfigError);
}

TEST_CASE("single-antenna ratio is exactly one") {
    const auto ch = rfos::testing::random_channel(3, 1, 2, 8);
    const auto ratios = throughput_ratios(decompose_channel(ch, 16), 1e3, 0.0);
    REQUIRE(ratios.size() == 16);
    for (double r : ratios)
        CHECK(std::abs(r - 1.0) <= 1e-12);
}

TEST_CASE("quantile interpolates linearly") {
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == 2.5);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.0) == 1.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 1.0) == 4.0);
    CHECK(quantile({0.0, 10.0}, 0.25) == doctest::Approx(2.5));
}

TEST_CASE("asymptotic ratio tightens with SNR") {
    SimConfig c;
    c.Q = 16;
    const auto res = asymptotic_experiment(c, {1e3, 1e6}, 50);
    REQUIRE(res.per_rho.size() == 2);
    CHECK(res.per_rho[0].samples > 0);
    CHECK(res.per_rho[1].median_abs_dev < res.per_rho[0].median_abs_dev);
    CHECK(res.per_rho[1].median_abs_dev <= 0.01);
}
