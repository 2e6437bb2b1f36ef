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

#include "rfos/results_io.hpp"

#include "rfos/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

namespace rfos {

namespace {

const char* const kSummaryColumns[] = {"scheme", "sweep_param", "sweep_value", "snr_db", "K", "B", "G",
                                       "Q", "trials", "seed", "mean_tput_bps_hz", "std_tput",
                                       "ci95_halfwidth"};

std::vector<const SummaryRow*> sorted_rows(const ThroughputSummary& summary) {
    std::vector<const SummaryRow*> rows;
    for (const SummaryRow& r : summary.rows)
        rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow* a, const SummaryRow* b) {
        const auto na = to_string(a->scheme);
        const auto nb = to_string(b->scheme);
        if (na != nb)
            return na < nb;
        return a->sweep_value < b->sweep_value;
    });
    return rows;
}

std::string bits_field(const SimConfig& c) {
    return c.exact_mode ? std::string("inf") : std::to_string(c.B);
}

} // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    return std::nullopt;
}

std::string format_summary(const ThroughputSummary& summary, OutputFormat format) {
    const auto rows = sorted_rows(summary);
    const std::string param(to_string(summary.param));

    if (format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "# schema=" << kSchemaVersion << '\n';
        for (std::size_t i = 0; i < std::size(kSummaryColumns); ++i)
            os << (i ? "," : "") << kSummaryColumns[i];
        os << '\n';
        for (const SummaryRow* r : rows) {
            const SimConfig& c = r->point;
            os << to_string(r->scheme) << ',' << param << ',' << format_double(r->sweep_value) << ','
               << format_double(c.snr_db) << ',' << c.K << ',' << bits_field(c) << ',' << c.G << ','
               << c.Q << ',' << r->trials << ',' << c.seed << ',' << format_double(r->mean) << ','
               << format_double(r->std_dev) << ',' << format_double(r->ci95) << '\n';
        }
        return os.str();
    }

    nlohmann::json out;
    out["schema_version"] = kSchemaVersion;
    out["sweep_param"] = param;
    out["config"] = to_json(summary.config);
    auto& list = out["rows"] = nlohmann::json::array();
    for (const SummaryRow* r : rows) {
        const SimConfig& c = r->point;
        nlohmann::json row;
        row["scheme"] = std::string(to_string(r->scheme));
        row["sweep_param"] = param;
        row["sweep_value"] = r->sweep_value;
        row["snr_db"] = c.snr_db;
        row["K"] = c.K;
        row["B"] = c.exact_mode ? nlohmann::json(nullptr) : nlohmann::json(c.B);
        row["exact_mode"] = c.exact_mode;
        row["G"] = c.G;
        row["Q"] = c.Q;
        row["trials"] = r->trials;
        row["seed"] = c.seed;
        row["mean_tput_bps_hz"] = r->mean;
        row["std_tput"] = r->std_dev;
        row["ci95_halfwidth"] = r->ci95;
        list.push_back(std::move(row));
    }
    return out.dump(2) + "\n";
}

std::string format_asymptotic(const AsymptoticResult& result, OutputFormat format) {
    const SimConfig& c = result.config;
    if (format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "# schema=" << kSchemaVersion << '\n';
        os << "rho,channels,samples,min_singular,Q,M,N,L,seed,median_abs_dev,max_abs_dev,"
              "ratio_q05,ratio_q25,ratio_q50,ratio_q75,ratio_q95\n";
        for (const RatioDistribution& d : result.per_rho) {
            os << format_double(d.rho) << ',' << d.channels << ',' << d.samples << ','
               << format_double(result.min_singular) << ',' << c.Q << ',' << c.M << ',' << c.N << ','
               << c.L << ',' << c.seed << ',' << format_double(d.median_abs_dev) << ','
               << format_double(d.max_abs_dev) << ',' << format_double(d.q05) << ','
               << format_double(d.q25) << ',' << format_double(d.q50) << ',' << format_double(d.q75)
               << ',' << format_double(d.q95) << '\n';
        }
        return os.str();
    }
    nlohmann::json out;
    out["schema_version"] = kSchemaVersion;
    out["config"] = to_json(c);
    out["min_singular"] = result.min_singular;
    auto& list = out["rows"] = nlohmann::json::array();
    for (const RatioDistribution& d : result.per_rho) {
        list.push_back({{"rho", d.rho},
                        {"channels", d.channels},
                        {"samples", d.samples},
                        {"median_abs_dev", d.median_abs_dev},
                        {"max_abs_dev", d.max_abs_dev},
                        {"ratio_q05", d.q05},
                        {"ratio_q25", d.q25},
                        {"ratio_q50", d.q50},
                        {"ratio_q75", d.q75},
                        {"ratio_q95", d.q95}});
    }
    return out.dump(2) + "\n";
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os)
            throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move results into " + path.string());
    }
}

void emit_results(const ThroughputSummary& summary, OutputFormat format,
                  const std::filesystem::path& path) {
    write_atomically(path, format_summary(summary, format));
}

} // namespace rfos
