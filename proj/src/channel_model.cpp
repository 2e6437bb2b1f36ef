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

#include "rfos/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace rfos {

PowerDelayProfile make_pdp(std::size_t taps) {
    require(taps >= 1, "power delay profile needs at least one tap");
    PowerDelayProfile pdp;
    pdp.length = taps;
    pdp.tap_powers.resize(taps);
    double total = 0.0;
    for (std::size_t l = 0; l < taps; ++l) {
        pdp.tap_powers[l] = std::exp(-static_cast<double>(l));
        total += pdp.tap_powers[l];
    }
    pdp.normalizer = 1.0 / total;
    for (double& p : pdp.tap_powers)
        p *= pdp.normalizer;
    return pdp;
}

ChannelTaps::ChannelTaps(std::size_t num_tx, std::size_t num_rx, std::size_t length,
                         std::int64_t mt_id, std::int64_t trial_id)
    : num_tx_(num_tx), num_rx_(num_rx), length_(length), mt_id_(mt_id), trial_id_(trial_id),
      taps_(num_tx * num_rx, CVector::Zero(static_cast<Eigen::Index>(length))) {
    require(num_tx >= 1 && num_rx >= 1, "antenna counts must be positive");
    require(length >= 1, "channel length must be positive");
}

ChannelTaps generate_taps(const PowerDelayProfile& pdp, std::size_t num_tx, std::size_t num_rx,
                          rng::Engine& stream, std::int64_t mt_id, std::int64_t trial_id) {
    require(pdp.length >= 1 && pdp.tap_powers.size() == pdp.length, "invalid power delay profile");
    require(num_tx <= num_rx, "transmit antennas M must not exceed receive antennas N (M=" +
                                  std::to_string(num_tx) + ", N=" + std::to_string(num_rx) + ")");

    ChannelTaps taps(num_tx, num_rx, pdp.length, mt_id, trial_id);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t m = 0; m < num_tx; ++m) {
        for (std::size_t n = 0; n < num_rx; ++n) {
            CVector& h = taps.tap(m, n);
            for (std::size_t l = 0; l < pdp.length; ++l) {
                const double sigma = std::sqrt(pdp.tap_powers[l] / 2.0);
                const double re = normal(stream);
                const double im = normal(stream);
                h[static_cast<Eigen::Index>(l)] = cdouble(sigma * re, sigma * im);
            }
        }
    }
    return taps;
}

CVector dft_selector(std::size_t q, std::size_t num_subcarriers, std::size_t taps) {
    require(q < num_subcarriers, "subcarrier index " + std::to_string(q) + " out of range [0, " +
                                     std::to_string(num_subcarriers) + ")");
    require(taps >= 1 && taps <= num_subcarriers, "selector length L must satisfy 1 <= L <= Q");

    CVector e(static_cast<Eigen::Index>(taps));
    // Reduce l*q mod Q in integers so the phase stays exact for large indices.
    for (std::size_t l = 0; l < taps; ++l) {
        const std::size_t k = (l * q) % num_subcarriers;
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(num_subcarriers);
        e[static_cast<Eigen::Index>(l)] = (k == 0) ? cdouble(1.0, 0.0) : std::polar(1.0, phase);
    }
    return e;
}

TimeDomainChannel build_H(const ChannelTaps& taps) {
    const auto L = static_cast<Eigen::Index>(taps.length());
    TimeDomainChannel out;
    out.num_rx = taps.num_rx();
    out.taps = taps.length();
    out.H.resize(static_cast<Eigen::Index>(taps.num_rx()) * L, static_cast<Eigen::Index>(taps.num_tx()));
    for (std::size_t n = 0; n < taps.num_rx(); ++n)
        for (std::size_t m = 0; m < taps.num_tx(); ++m)
            out.H.block(static_cast<Eigen::Index>(n) * L, static_cast<Eigen::Index>(m), L, 1) = taps.tap(m, n);
    return out;
}

CMatrix apply_selector(const CMatrix& stacked, std::size_t num_rx, const CVector& selector) {
    const Eigen::Index L = selector.size();
    require(stacked.rows() == static_cast<Eigen::Index>(num_rx) * L,
            "stacked matrix rows must equal N*L");
    CMatrix out(static_cast<Eigen::Index>(num_rx), stacked.cols());
    for (Eigen::Index n = 0; n < static_cast<Eigen::Index>(num_rx); ++n)
        out.row(n) = selector.transpose() * stacked.middleRows(n * L, L);
    return out;
}

SubcarrierChannel freq_channel(const TimeDomainChannel& channel, std::size_t q,
                               std::size_t num_subcarriers) {
    const CVector e = dft_selector(q, num_subcarriers, channel.taps);
    return {q, apply_selector(channel.H, channel.num_rx, e)};
}

} // namespace rfos
