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
#include <doctest.h>

#include <cmath>

#include "sddelab/random.hpp"
#include "sddelab/running_stats.hpp"

using namespace sddelab;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::generate(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}) ==
          C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::generate(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("empty increment sequence")
{
    CHECK(brownian_increments({1, 0}, 0, 0.1).empty());
}

TEST_CASE("identical streams are bitwise identical")
{
    const auto a = brownian_increments({42, 7}, 1001, 0.1);
    const auto b = brownian_increments({42, 7}, 1001, 0.1);
    CHECK(a == b);

    NormalStream s({42, 7});
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(s() * std::sqrt(0.1) == a[k]);
    }
    CHECK(s.draws() == a.size());
}

TEST_CASE("distinct seeds and streams differ")
{
    const auto base = brownian_increments({1, 0}, 64, 1.0);
    CHECK(base != brownian_increments({2, 0}, 64, 1.0));
    CHECK(base != brownian_increments({1, 1}, 64, 1.0));
    CHECK(brownian_increments({1, 1}, 64, 1.0) != brownian_increments({0, 2}, 64, 1.0));
}

TEST_CASE("increments have the right scale")
{
    const std::size_t n = 1000000;
    const auto xi = brownian_increments({2026, 3}, n, 1.0);
    RunningStats st;
    for (double x : xi) {
        CHECK_FALSE(std::isnan(x));
        st.push(x);
    }
    CHECK(std::abs(st.mean()) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(st.sample_variance() - 1.0) < 0.01);

    const auto scaled = brownian_increments({2026, 3}, 1000, 0.01);
    for (std::size_t k = 0; k < scaled.size(); ++k) {
        CHECK(scaled[k] == doctest::Approx(xi[k] * 0.1).epsilon(1e-15));
    }
}

TEST_CASE("normal tails are plausible")
{
    NormalStream s({9, 9});
    std::size_t beyond2 = 0;
    const std::size_t n = 200000;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = s();
        REQUIRE(std::isfinite(x));
        beyond2 += std::abs(x) > 2.0 ? 1 : 0;
    }
    // P(|Z| > 2) = 0.0455
    const double frac = static_cast<double>(beyond2) / static_cast<double>(n);
    CHECK(std::abs(frac - 0.0455) < 0.003);
}

TEST_CASE("running statistics merge matches sequential accumulation")
{
    const auto x = brownian_increments({5, 5}, 1000, 1.0);
    RunningStats all;
    RunningStats left;
    RunningStats right;
    for (std::size_t k = 0; k < x.size(); ++k) {
        all.push(x[k]);
        (k < 377 ? left : right).push(x[k]);
    }
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-12));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));

    RunningStats empty;
    empty.merge(all);
    CHECK(empty.mean() == all.mean());
    RunningStats one;
    one.push(3.0);
    CHECK(one.variance() == 0.0);
}
