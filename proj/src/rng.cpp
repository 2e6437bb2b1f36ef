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

#include "rfos/rng.hpp"

namespace rfos::rng {

static_assert(substream_key(1, Domain::Channel, 0, 0) != substream_key(1, Domain::Channel, 0, 1));
static_assert(substream_key(1, Domain::Channel, 0, 0) != substream_key(1, Domain::Codebook, 0, 0));

} // namespace rfos::rng
