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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sddelab {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += kW0;
            key[1] += kW1;
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// Identifies an independent random stream: the master seed keys the
/// generator and the stream index occupies the upper half of the counter.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// Standard normal draws from one Philox stream via Box-Muller.
///
/// Each counter block yields two uniforms and therefore two normals; the
/// output for a given StreamId is a pure function of the draw index.
class NormalStream {
public:
    explicit NormalStream(StreamId id) noexcept;

    double operator()() noexcept;

    std::uint64_t draws() const noexcept { return draws_; }

private:
    void refill() noexcept;

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t draws_ = 0;
    std::array<double, 2> cache_{};
    int cached_ = 0;
};

/// n Brownian increments xi_k sqrt(dt) with xi_k ~ N(0, 1).
std::vector<double> brownian_increments(StreamId id, std::size_t n, double dt);

}  // namespace sddelab
