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

#include "rfos/cli.hpp"

#include "rfos/selftest.hpp"
#include "rfos/sim_engine.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>
#include <sstream>

namespace rfos::cli {

namespace {

// Flag storage shared by every subcommand; only one subcommand is parsed.
struct FlagValues {
    std::string config_path;
    std::size_t Q = 0, M = 0, N = 0, L = 0, N_g = 0, K = 0, G = 0;
    unsigned B = 0;
    bool exact = false;
    double snr_db = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::vector<std::string> schemes;
    std::string output;
    std::string format = "csv";
    std::vector<double> values;
    std::vector<double> rho;
    std::size_t channels = 0;
    double min_singular = 0.0;
};

void add_sim_flags(CLI::App& app, FlagValues& f, const SimConfig& d) {
    app.add_option("--config", f.config_path, "JSON config file with SimConfig field names");
    app.add_option("--subcarriers", f.Q, "number of subcarriers Q")->default_val(d.Q);
    app.add_option("--tx-antennas", f.M, "BS antennas M")->default_val(d.M);
    app.add_option("--rx-antennas", f.N, "MT antennas N")->default_val(d.N);
    app.add_option("--taps", f.L, "channel length L")->default_val(d.L);
    app.add_option("--cp-length", f.N_g, "cyclic prefix length (recorded only)")->default_val(d.N_g);
    app.add_option("--num-mts", f.K, "number of MTs K")->default_val(d.K);
    app.add_option("--codebook-bits", f.B, "codebook bits B")->default_val(d.B);
    app.add_flag("--exact", f.exact, "use the true BFM (B = infinity)");
    app.add_option("--clusters", f.G, "number of clusters G")->default_val(d.G);
    app.add_option("--snr-db", f.snr_db, "SNR in dB")->default_val(d.snr_db);
    app.add_option("--trials", f.trials, "Monte Carlo trials")->default_val(d.trials);
    app.add_option("--seed", f.seed, "campaign seed")->default_val(d.seed);
    app.add_option("--threads", f.threads, "worker threads, 0 = all cores")->default_val(d.threads);
    app.add_option("--scheme", f.schemes, "schemes to simulate (PS_RF_OS PC_RF_OS PS_EB_OS PC_EB_OS)")
        ->delimiter(',')
        ->default_str("all");
}

void add_output_flags(CLI::App& app, FlagValues& f) {
    app.add_option("--output", f.output, "output file (stdout if omitted)");
    app.add_option("--format", f.format, "csv or json")->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
}

bool given(const CLI::App& app, const std::string& name) {
    const CLI::Option* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

void apply_flags(const CLI::App& app, const FlagValues& f, SimConfig& c) {
    if (given(app, "--subcarriers"))
        c.Q = f.Q;
    if (given(app, "--tx-antennas"))
        c.M = f.M;
    if (given(app, "--rx-antennas"))
        c.N = f.N;
    if (given(app, "--taps"))
        c.L = f.L;
    if (given(app, "--cp-length"))
        c.N_g = f.N_g;
    if (given(app, "--num-mts"))
        c.K = f.K;
    if (given(app, "--codebook-bits"))
        c.B = f.B;
    if (given(app, "--exact"))
        c.exact_mode = f.exact;
    if (given(app, "--clusters"))
        c.G = f.G;
    if (given(app, "--snr-db"))
        c.snr_db = f.snr_db;
    if (given(app, "--trials"))
        c.trials = f.trials;
    if (given(app, "--seed"))
        c.seed = f.seed;
    if (given(app, "--threads"))
        c.threads = f.threads;
    if (given(app, "--scheme")) {
        c.schemes.clear();
        for (const std::string& s : f.schemes) {
            const auto id = parse_scheme(s);
            if (!id)
                throw UsageError("unknown scheme '" + s + "'");
            c.schemes.push_back(*id);
        }
    }
}

} // namespace

std::vector<double> default_sweep_values(Subcommand sub, const SimConfig& config) {
    std::vector<double> values;
    switch (sub) {
    case Subcommand::SweepK:
        for (std::size_t k = 1; k <= config.K; ++k)
            values.push_back(static_cast<double>(k));
        break;
    case Subcommand::SweepB:
        values = {2, 4, 6, 8};
        break;
    case Subcommand::SweepG:
        for (std::size_t g : {4, 8, 16, 32})
            if (g < config.Q && config.Q % g == 0)
                values.push_back(static_cast<double>(g));
        values.push_back(static_cast<double>(config.Q));
        break;
    default:
        break;
    }
    return values;
}

Parsed parse_invocation(const std::vector<std::string>& args) {
    const SimConfig defaults;
    FlagValues f;
    CLI::App app{"Opportunistic scheduling and beamforming simulator for MIMO-OFDMA downlink", "rfos_sim"};
    app.require_subcommand(1);

    const std::map<std::string, std::pair<Subcommand, std::string>> subs = {
        {"run", {Subcommand::Run, "single operating point, all selected schemes"}},
        {"sweep-k", {Subcommand::SweepK, "sweep the number of MTs K"}},
        {"sweep-b", {Subcommand::SweepB, "sweep codebook bits B over nested codebooks"}},
        {"sweep-g", {Subcommand::SweepG, "sweep the number of clusters G"}},
        {"asymptotic", {Subcommand::Asymptotic, "high-SNR throughput ratio of the two decompositions"}},
        {"selftest", {Subcommand::Selftest, "fast invariant suite"}},
    };
    std::map<CLI::App*, Subcommand> handles;
    for (const auto& [name, info] : subs) {
        CLI::App* sub = app.add_subcommand(name, info.second);
        handles[sub] = info.first;
        if (info.first == Subcommand::Selftest) {
            sub->add_option("--seed", f.seed, "selftest seed")->default_val(SelftestOptions{}.seed);
            continue;
        }
        add_sim_flags(*sub, f, defaults);
        add_output_flags(*sub, f);
        if (info.first == Subcommand::SweepK || info.first == Subcommand::SweepB ||
            info.first == Subcommand::SweepG)
            sub->add_option("--values", f.values, "sweep grid (comma separated)")->delimiter(',');
        if (info.first == Subcommand::Asymptotic) {
            sub->add_option("--rho", f.rho, "linear SNR values (comma separated)")
                ->delimiter(',')
                ->default_str("1000,1000000");
            sub->add_option("--channels", f.channels, "number of random channels")->default_val(1000);
            sub->add_option("--min-singular", f.min_singular, "smallest singular value kept")
                ->default_val(0.1);
        }
    }

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    Parsed parsed;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        parsed.invocation.help = true;
        parsed.help_text = app.help();
        return parsed;
    } catch (const CLI::CallForAllHelp&) {
        parsed.invocation.help = true;
        parsed.help_text = app.help("", CLI::AppFormatMode::All);
        return parsed;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CLI::App* chosen = nullptr;
    for (const auto& [sub, id] : handles)
        if (sub->parsed())
            chosen = sub;
    if (chosen == nullptr)
        throw UsageError("a subcommand is required");

    Invocation& inv = parsed.invocation;
    inv.subcommand = handles.at(chosen);
    SimConfig config;
    if (inv.subcommand == Subcommand::Selftest) {
        config.seed = given(*chosen, "--seed") ? f.seed : SelftestOptions{}.seed;
        parsed.config = config;
        return parsed;
    }

    if (given(*chosen, "--config")) {
        inv.config_path = f.config_path;
        config = load_config(f.config_path, config);
    }
    apply_flags(*chosen, f, config);
    if (given(*chosen, "--output"))
        inv.output_path = f.output;
    inv.format = *parse_format(f.format);
    if (given(*chosen, "--values"))
        inv.sweep_values = f.values;
    if (inv.subcommand == Subcommand::Asymptotic) {
        if (given(*chosen, "--rho"))
            inv.rho_list = f.rho;
        inv.channels = f.channels;
        inv.min_singular = f.min_singular;
        require(inv.channels >= 1, "--channels must be at least 1");
    }
    config.validate();
    parsed.config = config;
    return parsed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Parsed parsed;
    try {
        parsed = parse_invocation(args);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: constraint violated: " << e.what() << '\n';
        return kExitConstraint;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    if (parsed.invocation.help) {
        out << parsed.help_text;
        return kExitOk;
    }

    const Invocation& inv = parsed.invocation;
    const SimConfig& config = parsed.config;
    try {
        std::string content;
        switch (inv.subcommand) {
        case Subcommand::Selftest: {
            SelftestOptions options;
            options.seed = config.seed;
            return run_selftest(out, options) == 0 ? kExitOk : kExitFailure;
        }
        case Subcommand::Asymptotic:
            content = format_asymptotic(
                asymptotic_experiment(config, inv.rho_list, inv.channels, inv.min_singular), inv.format);
            break;
        default: {
            Sweep sweep;
            switch (inv.subcommand) {
            case Subcommand::SweepK:
                sweep.param = SweepParam::K;
                break;
            case Subcommand::SweepB:
                sweep.param = SweepParam::B;
                break;
            case Subcommand::SweepG:
                sweep.param = SweepParam::G;
                break;
            default:
                break;
            }
            if (sweep.param != SweepParam::None)
                sweep.values = inv.sweep_values.empty() ? default_sweep_values(inv.subcommand, config)
                                                        : inv.sweep_values;
            content = format_summary(run_campaign(config, sweep), inv.format);
            break;
        }
        }
        if (inv.output_path)
            write_atomically(*inv.output_path, content);
        else
            out << content;
    } catch (const ConfigError& e) {
        err << "error: constraint violated: " << e.what() << '\n';
        return kExitConstraint;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace rfos::cli
