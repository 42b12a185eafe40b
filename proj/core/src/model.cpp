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
#include "sddelab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sddelab/error.hpp"

namespace sddelab {

std::string_view component_name(Component c) noexcept
{
    switch (c) {
    case Component::S:
        return "S";
    case Component::I:
        return "I";
    case Component::R:
        return "R";
    }
    return "?";
}

namespace {

void require(bool ok, const char* field, const char* rule)
{
    if (!ok) {
        throw ConfigError(std::string("model parameter '") + field + "' must be " + rule);
    }
}

}  // namespace

void ModelParams::validate() const
{
    require(std::isfinite(lambda) && lambda > 0.0, "lambda", "finite and > 0");
    require(std::isfinite(mu) && mu > 0.0, "mu", "finite and > 0");
    require(std::isfinite(beta) && beta >= 0.0, "beta", "finite and >= 0");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "finite and >= 0");
    require(std::isfinite(delta) && delta >= 0.0, "delta", "finite and >= 0");
    require(std::isfinite(eta) && eta >= 0.0, "eta", "finite and >= 0");
    require(std::isfinite(sigma) && sigma >= 0.0, "sigma", "finite and >= 0");
    require(std::isfinite(tau) && tau >= 0.0, "tau", "finite and >= 0");
}

ModelParams reference_params(double beta)
{
    ModelParams p;
    p.lambda = 0.05;
    p.mu = 0.05;
    p.beta = beta;
    p.gamma = 0.035;
    p.delta = 0.005;
    p.eta = 0.002;
    p.sigma = 0.05;
    p.tau = 10.0;
    return p;
}

double basic_reproduction_number(const ModelParams& p)
{
    p.validate();
    return p.beta * p.lambda / (p.mu * (p.mu + p.gamma + p.delta));
}

State drift(const ModelParams& p, const State& x, double incidence) noexcept
{
    const double infection = p.beta * x.s * incidence;
    return {p.lambda - p.mu * x.s - infection + p.eta * x.r,
            infection - (p.mu + p.gamma + p.delta) * x.i,
            p.gamma * x.i - (p.mu + p.eta) * x.r};
}

EquilibriaReport equilibria(const ModelParams& p)
{
    EquilibriaReport rep;
    rep.r0 = basic_reproduction_number(p);
    rep.e0 = {p.lambda / p.mu, 0.0, 0.0};
    if (rep.r0 > 1.0) {
        const double removal = p.gamma + p.delta + p.mu;
        const double surplus = p.beta * p.lambda - p.mu * removal;
        const double denom = p.beta * (p.gamma * p.mu + (p.delta + p.mu) * (p.eta + p.mu));
        State e;
        e.s = removal / p.beta;
        e.i = (p.eta + p.mu) * surplus / denom;
        e.r = p.gamma * surplus / denom;
        rep.e_star = e;
        rep.n_star = e.total();
        rep.excess = p.mu * e.s - p.eta * e.r;
    }
    return rep;
}

DiseaseFreeBoundReport check_disease_free_conditions(const ModelParams& p)
{
    const double r0 = basic_reproduction_number(p);
    const double s2 = p.sigma * p.sigma;
    const double gap = p.gamma + p.delta - p.eta - s2;

    DiseaseFreeBoundReport rep;
    rep.first_threshold = p.gamma + p.delta + 1.5 * (p.eta + s2);
    rep.second_threshold =
        gap != 0.0 ? (p.gamma * p.gamma + p.gamma * p.delta - (2.0 * p.eta - s2) * (p.delta - p.eta - s2)) / (2.0 * gap)
                   : std::numeric_limits<double>::quiet_NaN();

    rep.conditions.r0_below_one = r0 < 1.0;
    rep.conditions.mu_above_first = p.mu > rep.first_threshold;
    // NaN compares false, so a zero gap fails this check as well.
    rep.conditions.mu_above_second = p.mu > rep.second_threshold;
    rep.conditions.gap_positive = gap > 0.0;

    rep.k_first = (2.0 * p.mu - p.eta - s2) / 4.0;
    rep.k_second = p.lambda * (p.mu + p.eta) * (p.mu + p.gamma + p.delta) * (1.0 - r0) / (p.mu + p.gamma + p.eta);
    rep.k_const = std::min(rep.k_first, rep.k_second);
    rep.c1 = 2.0 * (p.gamma + p.delta + p.eta + s2) / (2.0 * p.mu - p.eta - s2);

    if (rep.conditions.all()) {
        rep.bound = p.lambda * p.lambda * s2 / (2.0 * rep.k_const * p.mu * p.mu) * (rep.c1 + 1.0) / rep.c1;
    }
    return rep;
}

ErgodicConditionReport check_ergodic_conditions(const ModelParams& p)
{
    const EquilibriaReport eq = equilibria(p);
    const double s2 = p.sigma * p.sigma;

    ErgodicConditionReport rep;
    rep.r0_gt_one = eq.r0 > 1.0;
    rep.sigma_small = s2 <= p.mu / 2.0;
    if (!eq.e_star) {
        return rep;
    }
    rep.excess_positive = *eq.excess > 0.0;

    // The Lyapunov weights divide by gamma and delta; without both there is
    // nothing to evaluate.
    if (p.gamma <= 0.0 || p.delta <= 0.0) {
        return rep;
    }
    const auto [s, i, r] = *eq.e_star;
    const double n = *eq.n_star;
    const double w3 = p.eta * p.gamma / (p.delta * (2.0 * p.mu + p.eta) * s);

    const double m_s = p.mu - p.eta / s * r;
    const double m_r = p.eta / (p.gamma * s) *
                       (p.gamma + p.mu + p.eta - s2 + p.delta * (p.mu + p.eta - 2.0 * s2) / (2.0 * p.mu + p.eta));
    const double m_n = (p.mu - 2.0 * s2) * w3;
    rep.m_tilde = std::min({m_s, m_r, m_n});
    rep.k_tilde = 0.5 * (s + i) + p.eta / (p.gamma * s) * r * r + 2.0 * w3 * (n * n + r * r);
    rep.region_radius_sq = s2 * *rep.k_tilde / *rep.m_tilde;
    return rep;
}

}  // namespace sddelab
