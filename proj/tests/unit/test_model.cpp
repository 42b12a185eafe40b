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

#include "sddelab/error.hpp"
#include "sddelab/model.hpp"

using namespace sddelab;

namespace {

// Reference values from tests/oracles/model_constants.py.
constexpr double kR0Low = 0.88888888888888889;
constexpr double kR0High = 2.2222222222222222;
constexpr double kFirstThreshold = 0.04675;
constexpr double kSecondThreshold = 0.019707746478873239;
constexpr double kKFirst = 0.023875;
constexpr double kKSecond = 0.00029885057471264368;
constexpr double kC1 = 0.93193717277486911;
constexpr double kBound = 8.670862143474503;
constexpr double kSStar = 0.45;
constexpr double kIStar = 0.31019522776572668;
constexpr double kRStar = 0.20878524945770065;
constexpr double kNStar = 0.96898047722342733;
constexpr double kExcess = 0.022082429501084599;
constexpr double kMTilde = 0.011022720199190787;
constexpr double kKTilde = 0.9849882319459928;
constexpr double kRadiusSq = 0.2233995361730909;

}  // namespace

TEST_CASE("reproduction number")
{
    CHECK(std::abs(basic_reproduction_number(reference_params(0.08)) - 0.8889) < 1e-4);
    CHECK(std::abs(basic_reproduction_number(reference_params(0.08)) - kR0Low) < 1e-15);
    CHECK(std::abs(basic_reproduction_number(reference_params(0.2)) - kR0High) < 1e-15);
    CHECK(std::abs(basic_reproduction_number(reference_params(0.2)) - 2.222) < 1e-3);
    CHECK(basic_reproduction_number(reference_params(0.0)) == 0.0);
}

TEST_CASE("reproduction number is monotone in the rates")
{
    const ModelParams base = reference_params(0.1);
    const double r0 = basic_reproduction_number(base);
    for (double f : {1.1, 1.5, 2.0}) {
        ModelParams p = base;
        p.beta *= f;
        CHECK(basic_reproduction_number(p) > r0);
        p = base;
        p.lambda *= f;
        CHECK(basic_reproduction_number(p) > r0);
        p = base;
        p.mu *= f;
        CHECK(basic_reproduction_number(p) < r0);
        p = base;
        p.gamma *= f;
        CHECK(basic_reproduction_number(p) < r0);
        p = base;
        p.delta *= f;
        CHECK(basic_reproduction_number(p) < r0);
    }
}

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(reference_params(0.2).validate());
    ModelParams p = reference_params(0.2);
    p.mu = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = reference_params(0.2);
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = reference_params(0.2);
    p.sigma = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = reference_params(0.2);
    p.tau = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = reference_params(0.2);
    p.beta = std::nan("");
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("disease-free equilibrium")
{
    const EquilibriaReport eq = equilibria(reference_params(0.08));
    CHECK(eq.e0 == State{1.0, 0.0, 0.0});
    CHECK_FALSE(eq.e_star);
    CHECK_FALSE(eq.excess);

    ModelParams p = reference_params(0.08);
    p.lambda = 0.3;
    p.mu = 0.07;
    const EquilibriaReport other = equilibria(p);
    CHECK(other.e0.s == p.lambda / p.mu);
    CHECK(other.e0.i == 0.0);
    CHECK(other.e0.r == 0.0);
}

TEST_CASE("endemic equilibrium")
{
    const ModelParams p = reference_params(0.2);
    const EquilibriaReport eq = equilibria(p);
    REQUIRE(eq.e_star);
    CHECK(eq.e_star->s == doctest::Approx(kSStar).epsilon(1e-14));
    CHECK(eq.e_star->i == doctest::Approx(kIStar).epsilon(1e-14));
    CHECK(eq.e_star->r == doctest::Approx(kRStar).epsilon(1e-14));
    CHECK(*eq.n_star == doctest::Approx(kNStar).epsilon(1e-14));
    CHECK(*eq.excess == doctest::Approx(kExcess).epsilon(1e-13));
    CHECK(std::abs(*eq.excess - 0.022) < 1e-3);

    const State f = drift(p, *eq.e_star, eq.e_star->i);
    CHECK(std::abs(f.s) < 1e-12);
    CHECK(std::abs(f.i) < 1e-12);
    CHECK(std::abs(f.r) < 1e-12);
}

TEST_CASE("endemic equilibrium exists only above threshold and is interior")
{
    for (double beta = 0.01; beta < 0.5; beta += 0.01) {
        ModelParams p = reference_params(beta);
        const EquilibriaReport eq = equilibria(p);
        CHECK(static_cast<bool>(eq.e_star) == (eq.r0 > 1.0));
        if (eq.e_star) {
            CHECK(eq.e_star->s > 0.0);
            CHECK(eq.e_star->i > 0.0);
            CHECK(eq.e_star->r > 0.0);
            const State f = drift(p, *eq.e_star, eq.e_star->i);
            CHECK(std::max({std::abs(f.s), std::abs(f.i), std::abs(f.r)}) < 1e-12);
        }
    }
}

TEST_CASE("endemic equilibrium with zero recovery or immunity loss")
{
    ModelParams p = reference_params(0.2);
    p.gamma = 0.0;
    auto eq = equilibria(p);
    REQUIRE(eq.e_star);
    CHECK(eq.e_star->r == 0.0);
    p = reference_params(0.2);
    p.eta = 0.0;
    eq = equilibria(p);
    REQUIRE(eq.e_star);
    const State f = drift(p, *eq.e_star, eq.e_star->i);
    CHECK(std::max({std::abs(f.s), std::abs(f.i), std::abs(f.r)}) < 1e-12);
}

TEST_CASE("disease-free conditions and constants")
{
    const DiseaseFreeBoundReport d = check_disease_free_conditions(reference_params(0.08));
    CHECK(d.conditions.r0_below_one);
    CHECK(d.conditions.mu_above_first);
    CHECK(d.conditions.mu_above_second);
    CHECK(d.conditions.gap_positive);
    CHECK(d.conditions.all());
    CHECK(d.first_threshold == doctest::Approx(kFirstThreshold).epsilon(1e-14));
    CHECK(d.second_threshold == doctest::Approx(kSecondThreshold).epsilon(1e-14));
    CHECK(d.k_first == doctest::Approx(kKFirst).epsilon(1e-14));
    CHECK(d.k_second == doctest::Approx(kKSecond).epsilon(1e-12));
    CHECK(d.k_const == std::min(d.k_first, d.k_second));
    CHECK(d.c1 == doctest::Approx(kC1).epsilon(1e-14));
    REQUIRE(d.bound);
    CHECK(*d.bound == doctest::Approx(kBound).epsilon(1e-12));
}

TEST_CASE("K is the smaller candidate")
{
    for (double beta : {0.01, 0.03, 0.05, 0.08}) {
        for (double sigma : {0.0, 0.02, 0.05, 0.1}) {
            ModelParams p = reference_params(beta);
            p.sigma = sigma;
            const auto d = check_disease_free_conditions(p);
            CHECK(d.k_const <= d.k_first);
            CHECK(d.k_const <= d.k_second);
            CHECK((d.k_const == d.k_first || d.k_const == d.k_second));
        }
    }
}

TEST_CASE("disease-free conditions report each failure")
{
    ModelParams p = reference_params(0.08);
    p.sigma = 0.25;
    auto d = check_disease_free_conditions(p);
    CHECK_FALSE(d.conditions.gap_positive);
    CHECK_FALSE(d.conditions.all());
    CHECK_FALSE(d.bound);

    d = check_disease_free_conditions(reference_params(0.2));
    CHECK_FALSE(d.conditions.r0_below_one);
    CHECK_FALSE(d.bound);

    p = reference_params(0.08);
    p.mu = 0.03;
    p.lambda = 0.03;
    d = check_disease_free_conditions(p);
    CHECK_FALSE(d.conditions.mu_above_first);
}

TEST_CASE("boundary equality counts as failure")
{
    // gamma + delta - eta - sigma^2 == 0 exactly
    ModelParams p = reference_params(0.01);
    p.gamma = 0.25;
    p.delta = 0.0;
    p.eta = 0.0;
    p.sigma = 0.5;
    const auto d = check_disease_free_conditions(p);
    CHECK_FALSE(d.conditions.gap_positive);
    CHECK(std::isnan(d.second_threshold));
}

TEST_CASE("ergodic conditions and constants")
{
    const ErgodicConditionReport e = check_ergodic_conditions(reference_params(0.2));
    CHECK(e.r0_gt_one);
    CHECK(e.excess_positive);
    CHECK(e.sigma_small);
    CHECK(e.all());
    REQUIRE(e.m_tilde);
    CHECK(*e.m_tilde == doctest::Approx(kMTilde).epsilon(1e-12));
    CHECK(*e.k_tilde == doctest::Approx(kKTilde).epsilon(1e-12));
    CHECK(*e.region_radius_sq == doctest::Approx(kRadiusSq).epsilon(1e-12));
}

TEST_CASE("ergodic conditions in the deterministic limit")
{
    ModelParams p = reference_params(0.2);
    p.sigma = 0.0;
    const auto e = check_ergodic_conditions(p);
    CHECK(e.sigma_small);
    REQUIRE(e.region_radius_sq);
    CHECK(*e.region_radius_sq == 0.0);
}

TEST_CASE("ergodic conditions below threshold")
{
    const auto e = check_ergodic_conditions(reference_params(0.08));
    CHECK_FALSE(e.r0_gt_one);
    CHECK_FALSE(e.m_tilde);
    CHECK_FALSE(e.k_tilde);
    CHECK_FALSE(e.all());

    ModelParams p = reference_params(0.2);
    p.sigma = 0.2;
    CHECK_FALSE(check_ergodic_conditions(p).sigma_small);
}
