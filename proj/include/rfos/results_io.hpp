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

#include "rfos/sim_engine.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rfos {

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_format(std::string_view name);

inline constexpr int kSchemaVersion = 1;

// CSV: "# schema=1", a header, one row per (scheme, sweep point), sorted by
// scheme name then sweep value. JSON carries the same fields.
std::string format_summary(const ThroughputSummary& summary, OutputFormat format);

std::string format_asymptotic(const AsymptoticResult& result, OutputFormat format);

// Writes to a temporary sibling and renames it over `path`.
void write_atomically(const std::filesystem::path& path, std::string_view content);

void emit_results(const ThroughputSummary& summary, OutputFormat format,
                  const std::filesystem::path& path);

} // namespace rfos
