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
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace sddelab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kSuccess = 0,
    kConditionFail = 1,
    kConfigFailure = 2,
    kRuntimeFailure = 3,
};

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<std::size_t> paths;
    std::optional<std::vector<double>> probes;
    std::optional<std::string> clamp_policy;
    std::optional<std::size_t> stride;
    std::optional<unsigned> workers;
};

void apply(const Overrides& o, RunConfig& cfg);

enum class Regime { Auto, DiseaseFree, Endemic };

Regime parse_regime(const std::string& s);

int cmd_check(const std::filesystem::path& config, Regime regime, const std::optional<std::filesystem::path>& out_dir,
              std::ostream& out);
int cmd_simulate(const std::filesystem::path& config, const Overrides& o, const std::filesystem::path& out_dir,
                 std::ostream& out);
int cmd_ensemble(const std::filesystem::path& config, const Overrides& o, const std::filesystem::path& out_dir,
                 std::ostream& out);

/// Runs `body`, mapping configuration errors to exit code 2 and any other
/// exception to 3. Messages go to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

struct ManifestEntry {
    std::string file;
    std::uintmax_t bytes = 0;
    std::string fnv1a64;
};

/// Writes manifest.json into `dir` describing the run and its outputs.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& outputs);

}  // namespace sddelab::cli
