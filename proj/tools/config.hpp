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
#include <string>
#include <vector>

#include "sddelab/ensemble.hpp"
#include "sddelab/error.hpp"

namespace sddelab::cli {

/// Parse failure pointing at a line (0 when not line-specific) and a field.
class ConfigParseError : public ConfigError {
public:
    ConfigParseError(std::string source, int line, std::string field, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

enum class FunctionalMode { Auto, None, DiseaseFree };

/// Everything a run needs, after defaults and command-line overrides.
struct RunConfig {
    SimConfig sim;
    std::uint64_t seed = 1;
    std::size_t paths = 10000;
    std::vector<double> probes{160.0, 180.0, 200.0};
    unsigned workers = 0;
    std::size_t failure_budget = 0;
    FunctionalMode functional = FunctionalMode::Auto;

    EnsembleConfig ensemble() const;
};

/// Flat key = value text with [model], [incidence], [simulation] and
/// [ensemble] sections. `#` and `;` start comments. Relative table paths are
/// resolved against `base_dir`.
RunConfig parse_config_text(const std::string& text, const std::string& source,
                            const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Key-sorted rendering of the effective configuration; stable across
/// formatting differences in the input file.
std::string canonical_text(const RunConfig& cfg);

std::uint64_t fnv1a64(const std::string& bytes) noexcept;
std::string hex64(std::uint64_t x);

ClampPolicy parse_clamp_policy(const std::string& s);
std::vector<double> parse_number_list(const std::string& s, const std::string& field);

}  // namespace sddelab::cli
