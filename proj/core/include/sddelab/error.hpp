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
#include <stdexcept>
#include <string>

namespace sddelab {

/// Invalid parameters, grids or configuration values.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A step produced a non-finite value.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string component, std::int64_t step, const std::string& what)
        : std::runtime_error(what), component_(std::move(component)), step_(step) {}

    const std::string& component() const noexcept { return component_; }
    std::int64_t step() const noexcept { return step_; }

private:
    std::string component_;
    std::int64_t step_;
};

/// Raised under the fail-on-negative clamp policy.
class NegativeStateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Too many path failures in an ensemble run.
class EnsembleError : public std::runtime_error {
public:
    EnsembleError(std::size_t path_index, const std::string& what)
        : std::runtime_error(what), path_index_(path_index) {}

    std::size_t path_index() const noexcept { return path_index_; }

private:
    std::size_t path_index_;
};

}  // namespace sddelab
