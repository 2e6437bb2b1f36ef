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

#include "rfos/rng.hpp"
#include "rfos/types.hpp"

#include <cstdint>
#include <vector>

namespace rfos {

// Exponential power delay profile: tap_powers[l] = normalizer * exp(-l).
struct PowerDelayProfile {
    std::size_t length = 0;
    std::vector<double> tap_powers;
    double normalizer = 0.0;
};

PowerDelayProfile make_pdp(std::size_t taps);

// Per-MT time-domain impulse responses. taps(m, n) is the length-L response
// from transmit antenna m to receive antenna n.
class ChannelTaps {
public:
    ChannelTaps(std::size_t num_tx, std::size_t num_rx, std::size_t length,
                std::int64_t mt_id = 0, std::int64_t trial_id = 0);

    std::size_t num_tx() const { return num_tx_; }
    std::size_t num_rx() const { return num_rx_; }
    std::size_t length() const { return length_; }
    std::int64_t mt_id() const { return mt_id_; }
    std::int64_t trial_id() const { return trial_id_; }

    CVector& tap(std::size_t m, std::size_t n) { return taps_[m * num_rx_ + n]; }
    const CVector& tap(std::size_t m, std::size_t n) const { return taps_[m * num_rx_ + n]; }

private:
    std::size_t num_tx_;
    std::size_t num_rx_;
    std::size_t length_;
    std::int64_t mt_id_;
    std::int64_t trial_id_;
    std::vector<CVector> taps_;
};

// Draws every tap as a circularly symmetric complex Gaussian with variance
// pdp.tap_powers[l]. Requires num_tx <= num_rx.
ChannelTaps generate_taps(const PowerDelayProfile& pdp, std::size_t num_tx, std::size_t num_rx,
                          rng::Engine& stream, std::int64_t mt_id = 0, std::int64_t trial_id = 0);

// First L entries of column q of the Q-point DFT matrix.
CVector dft_selector(std::size_t q, std::size_t num_subcarriers, std::size_t taps);

// Stacked (N*L) x M time-domain channel; rows n*L .. n*L+L-1 of column m
// hold the response from tx m to rx n.
struct TimeDomainChannel {
    CMatrix H;
    std::size_t num_rx = 0;
    std::size_t taps = 0;

    std::size_t num_tx() const { return static_cast<std::size_t>(H.cols()); }
};

TimeDomainChannel build_H(const ChannelTaps& taps);

struct SubcarrierChannel {
    std::size_t q = 0;
    CMatrix G;
};

// G_q = [I_N (x) e_q^T] H, evaluated block by block.
SubcarrierChannel freq_channel(const TimeDomainChannel& channel, std::size_t q,
                               std::size_t num_subcarriers);

// Applies the selector e_q^T to every L-row block of an (N*L) x C matrix.
CMatrix apply_selector(const CMatrix& stacked, std::size_t num_rx, const CVector& selector);

} // namespace rfos
