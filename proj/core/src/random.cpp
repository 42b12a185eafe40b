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
#include "sddelab/random.hpp"

#include <cmath>
#include <numbers>

#include "sddelab/error.hpp"

namespace sddelab {

namespace {

// Top 53 bits mapped to the open interval (0, 1).
double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept
{
    const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

NormalStream::NormalStream(StreamId id) noexcept
    : key_{static_cast<std::uint32_t>(id.seed), static_cast<std::uint32_t>(id.seed >> 32)}, stream_(id.stream)
{
}

void NormalStream::refill() noexcept
{
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    ++block_;
    const auto out = Philox4x32::generate(ctr, key_);
    const double u1 = to_open_unit(out[0], out[1]);
    const double u2 = to_open_unit(out[2], out[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cache_ = {radius * std::cos(angle), radius * std::sin(angle)};
    cached_ = 2;
}

double NormalStream::operator()() noexcept
{
    if (cached_ == 0) {
        refill();
    }
    ++draws_;
    return cache_[2 - cached_--];
}

std::vector<double> brownian_increments(StreamId id, std::size_t n, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("brownian increments need dt > 0");
    }
    NormalStream normal(id);
    const double scale = std::sqrt(dt);
    std::vector<double> out(n);
    for (double& x : out) {
        x = normal() * scale;
    }
    return out;
}

}  // namespace sddelab
