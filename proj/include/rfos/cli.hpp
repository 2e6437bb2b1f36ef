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

#include "rfos/config.hpp"
#include "rfos/results_io.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfos::cli {

enum class Subcommand { Run, SweepK, SweepB, SweepG, Asymptotic, Selftest };

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConstraint = 3;
inline constexpr int kExitIo = 4;

struct Invocation {
    Subcommand subcommand = Subcommand::Run;
    std::optional<std::string> config_path;
    std::optional<std::string> output_path; // stdout when empty
    OutputFormat format = OutputFormat::Csv;
    std::vector<double> sweep_values;       // empty: subcommand default
    std::vector<double> rho_list{1e3, 1e6}; // asymptotic
    std::size_t channels = 1000;            // asymptotic
    double min_singular = 0.1;              // asymptotic
    bool help = false;
};

// Malformed command line (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Parsed {
    SimConfig config;
    Invocation invocation;
    std::string help_text;
};

// Resolves built-in defaults, then the config file, then explicit flags.
// Throws UsageError for bad flags and ConfigError for constraint violations.
Parsed parse_invocation(const std::vector<std::string>& args);

// Default sweep grid for a subcommand given the resolved config.
std::vector<double> default_sweep_values(Subcommand sub, const SimConfig& config);

// Entry point behind main(); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rfos::cli
