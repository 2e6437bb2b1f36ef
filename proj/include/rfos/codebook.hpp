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

#include "rfos/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace rfos {

// Shared set of 2^B unitary M x M beamforming matrices. Entry d is drawn from
// its own substream of `seed`, so the B-bit book is a prefix of every larger
// book with the same seed. In exact mode the book has no entries and
// selection returns the MT's true BFM (the B = infinity reference).
struct Codebook {
    unsigned bits = 0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    bool exact_mode = false;
    std::vector<CMatrix> entries;

    std::size_t size() const { return entries.size(); }

    // First 2^b entries. Requires b <= bits.
    Codebook prefix(unsigned b) const;
};

inline constexpr std::size_t kDefaultCodebookCap = std::size_t{1} << 20;
// Index reported for the virtual exact-mode entry.
inline constexpr std::size_t kExactIndex = std::numeric_limits<std::size_t>::max();
// Stand-in for a perfect alignment when scores are summed over a cluster.
inline constexpr double kPerfectAlignmentValue = 1e12;
inline constexpr double kAlignmentFloor = 1e-12;

Codebook generate_codebook(unsigned bits, std::size_t dim, std::uint64_t seed,
                           std::size_t cap = kDefaultCodebookCap);

Codebook exact_codebook(std::size_t dim);

// Haar-distributed unitary from a complex Gaussian matrix, QR with the
// diagonal phases fixed.
CMatrix haar_unitary(std::size_t dim, std::uint64_t seed, std::uint64_t index);

struct AlignmentScore {
    RMatrix gamma; // gamma(i, j) = |[V^H Vd]_{i,j}|^2
    double score = 0.0;
    bool perfect = false; // off-diagonal mass below the floor in every row

    // Ranking used by the selector: perfect beats any finite score.
    bool outranks(const AlignmentScore& other) const {
        if (perfect != other.perfect)
            return perfect;
        return !perfect && score > other.score;
    }
    double summable() const { return perfect ? kPerfectAlignmentValue : score; }
};

// sum_m gamma_mm / max(sum_{j != m} gamma_mj, floor). Rejects inputs whose
// gamma rows deviate from unit sum by more than 1e-6.
AlignmentScore alignment_score(const CMatrix& V, const CMatrix& Vd);

// gamma for the chosen entry; identity for kExactIndex.
RMatrix alignment_gamma(const CMatrix& V, const Codebook& codebook, std::size_t index);

// The matrix behind an index (V itself for kExactIndex).
const CMatrix& codebook_entry(const Codebook& codebook, std::size_t index, const CMatrix& V);

// argmax of the alignment score; lowest index wins ties.
std::size_t select_bfm(const CMatrix& V, const Codebook& codebook);

// One entry for a whole cluster: argmax of the summed scores over the
// cluster's per-subcarrier BFMs.
std::size_t select_bfm_cluster(std::span<const CMatrix> cluster_bfms, const Codebook& codebook);

// Text serialization, bit-exact on reload.
void write_codebook(std::ostream& os, const Codebook& codebook);
Codebook read_codebook(std::istream& is);
void save_codebook(const Codebook& codebook, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

} // namespace rfos
