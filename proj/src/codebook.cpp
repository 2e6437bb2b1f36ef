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

#include "rfos/codebook.hpp"

#include "rfos/decomposition.hpp"
#include "rfos/format.hpp"
#include "rfos/rng.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace rfos {

namespace {

struct RawScore {
    double score = 0.0;
    bool perfect = false;

    bool outranks(const RawScore& other) const {
        if (perfect != other.perfect)
            return perfect;
        return !perfect && score > other.score;
    }
};

// Allocation-free scoring for the selection loops. Entries are unitary by
// construction, so the row-sum check is skipped here.
RawScore raw_score(const CMatrix& V, const CMatrix& Vd) {
    const Eigen::Index M = V.cols();
    RawScore out;
    out.perfect = true;
    for (Eigen::Index i = 0; i < M; ++i) {
        double diag = 0.0;
        double off = 0.0;
        for (Eigen::Index j = 0; j < M; ++j) {
            cdouble p = 0.0;
            for (Eigen::Index k = 0; k < V.rows(); ++k)
                p += std::conj(V(k, i)) * Vd(k, j);
            const double g = std::norm(p);
            if (i == j)
                diag = g;
            else
                off += g;
        }
        out.score += diag / std::max(off, kAlignmentFloor);
        if (off >= kAlignmentFloor)
            out.perfect = false;
    }
    return out;
}

void check_selectable(const CMatrix& V, const Codebook& codebook) {
    require(V.rows() == V.cols() && static_cast<std::size_t>(V.cols()) == codebook.dim,
            "BFM dimension does not match codebook dimension");
    require(codebook.exact_mode || !codebook.entries.empty(), "codebook is empty");
}

} // namespace

Codebook Codebook::prefix(unsigned b) const {
    require(b <= bits, "prefix size exceeds codebook size");
    Codebook out;
    out.bits = b;
    out.dim = dim;
    out.seed = seed;
    out.exact_mode = exact_mode;
    if (!exact_mode)
        out.entries.assign(entries.begin(), entries.begin() + (std::ptrdiff_t{1} << b));
    return out;
}

CMatrix haar_unitary(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
    auto stream = rng::make_stream(seed, rng::Domain::Codebook, index, dim);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix A(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = normal(stream);
            const double im = normal(stream);
            A(r, c) = cdouble(re, im);
        }
    return thin_qr(A).Qf;
}

Codebook generate_codebook(unsigned bits, std::size_t dim, std::uint64_t seed, std::size_t cap) {
    require(dim >= 1, "codebook dimension must be positive");
    require(bits < 63 && (std::size_t{1} << bits) <= cap,
            "codebook of 2^" + std::to_string(bits) + " entries exceeds the entry cap of " +
                std::to_string(cap));
    Codebook cb;
    cb.bits = bits;
    cb.dim = dim;
    cb.seed = seed;
    const std::size_t count = std::size_t{1} << bits;
    cb.entries.reserve(count);
    for (std::size_t d = 0; d < count; ++d)
        cb.entries.push_back(haar_unitary(dim, seed, d));
    return cb;
}

Codebook exact_codebook(std::size_t dim) {
    require(dim >= 1, "codebook dimension must be positive");
    Codebook cb;
    cb.dim = dim;
    cb.exact_mode = true;
    return cb;
}

AlignmentScore alignment_score(const CMatrix& V, const CMatrix& Vd) {
    require(V.rows() == V.cols() && Vd.rows() == V.rows() && Vd.cols() == V.cols(),
            "alignment needs two square matrices of the same size");
    const CMatrix P = V.adjoint() * Vd;
    AlignmentScore out;
    out.gamma = P.cwiseAbs2();
    out.perfect = true;
    const Eigen::Index M = P.rows();
    for (Eigen::Index m = 0; m < M; ++m) {
        const double row = out.gamma.row(m).sum();
        if (std::abs(row - 1.0) > 1e-6)
            throw NumericError("alignment inputs are not unitary (gamma row " + std::to_string(m) +
                               " sums to " + format_double(row) + ")");
        const double diag = out.gamma(m, m);
        const double off = row - diag;
        out.score += diag / std::max(off, kAlignmentFloor);
        if (off >= kAlignmentFloor)
            out.perfect = false;
    }
    return out;
}

const CMatrix& codebook_entry(const Codebook& codebook, std::size_t index, const CMatrix& V) {
    if (index == kExactIndex)
        return V;
    require(index < codebook.entries.size(), "codebook index out of range");
    return codebook.entries[index];
}

RMatrix alignment_gamma(const CMatrix& V, const Codebook& codebook, std::size_t index) {
    if (index == kExactIndex)
        return RMatrix::Identity(V.rows(), V.cols());
    return (V.adjoint() * codebook_entry(codebook, index, V)).cwiseAbs2();
}

std::size_t select_bfm(const CMatrix& V, const Codebook& codebook) {
    check_selectable(V, codebook);
    if (codebook.exact_mode)
        return kExactIndex;
    std::size_t best = 0;
    RawScore best_score = raw_score(V, codebook.entries[0]);
    for (std::size_t d = 1; d < codebook.entries.size(); ++d) {
        const RawScore s = raw_score(V, codebook.entries[d]);
        if (s.outranks(best_score)) {
            best = d;
            best_score = s;
        }
    }
    return best;
}

std::size_t select_bfm_cluster(std::span<const CMatrix> cluster_bfms, const Codebook& codebook) {
    require(!cluster_bfms.empty(), "cluster has no subcarriers");
    for (const CMatrix& V : cluster_bfms)
        check_selectable(V, codebook);
    if (codebook.exact_mode)
        return kExactIndex;
    std::size_t best = 0;
    double best_total = -1.0;
    for (std::size_t d = 0; d < codebook.entries.size(); ++d) {
        double total = 0.0;
        for (const CMatrix& V : cluster_bfms) {
            const RawScore s = raw_score(V, codebook.entries[d]);
            total += s.perfect ? kPerfectAlignmentValue : s.score;
        }
        if (total > best_total) {
            best = d;
            best_total = total;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Serialization

void write_codebook(std::ostream& os, const Codebook& codebook) {
    os << "rfos-codebook 1\n";
    os << "bits " << codebook.bits << '\n';
    os << "dim " << codebook.dim << '\n';
    os << "seed " << codebook.seed << '\n';
    os << "exact " << (codebook.exact_mode ? 1 : 0) << '\n';
    os << "entries " << codebook.entries.size() << '\n';
    for (const CMatrix& e : codebook.entries) {
        bool first = true;
        for (Eigen::Index r = 0; r < e.rows(); ++r)
            for (Eigen::Index c = 0; c < e.cols(); ++c) {
                os << (first ? "" : " ") << format_double(e(r, c).real()) << ' '
                   << format_double(e(r, c).imag());
                first = false;
            }
        os << '\n';
    }
}

namespace {

template <typename T>
T read_field(std::istream& is, const std::string& key) {
    std::string name;
    T value{};
    if (!(is >> name >> value) || name != key)
        throw std::runtime_error("codebook file: expected field '" + key + "'");
    return value;
}

} // namespace

Codebook read_codebook(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "rfos-codebook" || version != 1)
        throw std::runtime_error("codebook file: bad header");
    Codebook cb;
    cb.bits = read_field<unsigned>(is, "bits");
    cb.dim = read_field<std::size_t>(is, "dim");
    cb.seed = read_field<std::uint64_t>(is, "seed");
    cb.exact_mode = read_field<int>(is, "exact") != 0;
    const auto count = read_field<std::size_t>(is, "entries");
    if (!cb.exact_mode && count != (std::size_t{1} << cb.bits))
        throw std::runtime_error("codebook file: entry count does not match bits");
    const auto n = static_cast<Eigen::Index>(cb.dim);
    cb.entries.reserve(count);
    for (std::size_t d = 0; d < count; ++d) {
        CMatrix e(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) {
                std::string re, im;
                if (!(is >> re >> im))
                    throw std::runtime_error("codebook file: truncated entry " + std::to_string(d));
                e(r, c) = cdouble(parse_double(re), parse_double(im));
            }
        cb.entries.push_back(std::move(e));
    }
    return cb;
}

void save_codebook(const Codebook& codebook, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_codebook(os, codebook);
    if (!os)
        throw std::runtime_error("write failed: " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path.string());
    return read_codebook(is);
}

} // namespace rfos
