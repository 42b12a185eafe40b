/*
 * Copyright 2026 The sddelab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

namespace {

using sddelab::cli::Overrides;

void add_run_flags(CLI::App* cmd, Overrides& o, std::string& out_dir)
{
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--dt", o.dt, "Step size");
    cmd->add_option("--t-end", o.t_end, "Final time");
    cmd->add_option("--clamp-policy", o.clamp_policy, "clamp or fail");
    cmd->add_option("--stride", o.stride, "Record every n-th step");
    cmd->add_option("--out", out_dir, "Output directory")->required();
}

}  // namespace

int main(int argc, char** argv)
{
    namespace cli = sddelab::cli;
    CLI::App app{"Stochastic delayed SIRS simulation lab"};
    app.set_version_flag("--version", std::string(cli::kToolVersion));
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::string regime = "auto";
    Overrides o;
    std::vector<double> probes;

    auto* check = app.add_subcommand("check", "Evaluate equilibria and stability conditions");
    check->add_option("config", config, "Config file")->required();
    check->add_option("--regime", regime, "auto, disease-free or endemic");
    check->add_option("--out", out_dir, "Optional output directory");

    auto* simulate = app.add_subcommand("simulate", "Simulate one path and its deterministic counterpart");
    simulate->add_option("config", config, "Config file")->required();
    add_run_flags(simulate, o, out_dir);

    auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble with marginals and stationarity checks");
    ensemble->add_option("config", config, "Config file")->required();
    add_run_flags(ensemble, o, out_dir);
    ensemble->add_option("--paths", o.paths, "Number of paths");
    ensemble->add_option("--probes", probes, "Probe times")->delimiter(',');
    ensemble->add_option("--workers", o.workers, "Worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kConfigFailure;
    }
    if (!probes.empty()) {
        o.probes = probes;
    }

    return cli::guarded(
        [&]() -> int {
            if (*check) {
                std::optional<std::filesystem::path> dir;
                if (!out_dir.empty()) {
                    dir = out_dir;
                }
                return cli::cmd_check(config, cli::parse_regime(regime), dir, std::cout);
            }
            if (*simulate) {
                return cli::cmd_simulate(config, o, out_dir, std::cout);
            }
            return cli::cmd_ensemble(config, o, out_dir, std::cout);
        },
        std::cerr);
}
