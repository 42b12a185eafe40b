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

#include <optional>
#include <string_view>

namespace sddelab {

/// Compartment state of the SIRS system.
struct State {
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;

    double total() const noexcept { return s + i + r; }
    friend bool operator==(const State&, const State&) = default;
};

enum class Component { S, I, R };

std::string_view component_name(Component c) noexcept;

/// Rate constants of the delayed stochastic SIRS model.
///
/// All rates are per unit time; `sigma` is the intensity of the multiplicative
/// noise on the death rate (per square root of time) and `tau` the length of
/// the history window seen by the incidence functional.
struct ModelParams {
    double lambda = 0.0;  ///< recruitment
    double mu = 0.0;      ///< natural death
    double beta = 0.0;    ///< transmission
    double gamma = 0.0;   ///< recovery
    double delta = 0.0;   ///< disease-induced death
    double eta = 0.0;     ///< loss of immunity
    double sigma = 0.0;   ///< noise intensity
    double tau = 0.0;     ///< delay horizon

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Reference parameter set: lambda = mu = 0.05, gamma = 0.035, delta = 0.005,
/// eta = 0.002, sigma = 0.05, tau = 10, with the given transmission rate.
ModelParams reference_params(double beta);

double basic_reproduction_number(const ModelParams& p);

/// Deterministic drift of the SIRS system for a given incidence value H.
State drift(const ModelParams& p, const State& x, double incidence) noexcept;

struct EquilibriaReport {
    double r0 = 0.0;
    State e0;
    std::optional<State> e_star;  ///< present iff r0 > 1
    std::optional<double> n_star;
    std::optional<double> excess;  ///< mu S* - eta R*
};

EquilibriaReport equilibria(const ModelParams& p);

/// Sufficient conditions and constants for the mean-square bound around the
/// disease-free equilibrium.
struct DiseaseFreeBoundReport {
    struct Conditions {
        bool r0_below_one = false;
        bool mu_above_first = false;   ///< mu > gamma + delta + 3/2 (eta + sigma^2)
        bool mu_above_second = false;  ///< mu > second expression of the max
        bool gap_positive = false;     ///< gamma + delta - eta - sigma^2 > 0

        bool all() const noexcept { return r0_below_one && mu_above_first && mu_above_second && gap_positive; }
    };

    Conditions conditions;
    double first_threshold = 0.0;
    double second_threshold = 0.0;  ///< NaN when the gap is zero
    double k_first = 0.0;           ///< (2 mu - eta - sigma^2) / 4
    double k_second = 0.0;          ///< lambda (mu+eta)(mu+gamma+delta)(1-R0)/(mu+gamma+eta)
    double k_const = 0.0;
    double c1 = 0.0;
    std::optional<double> bound;  ///< populated only when every condition holds
};

DiseaseFreeBoundReport check_disease_free_conditions(const ModelParams& p);

/// Gate conditions and Lyapunov constants for uniqueness and ergodicity of
/// the invariant measure around the endemic equilibrium.
struct ErgodicConditionReport {
    bool r0_gt_one = false;
    bool excess_positive = false;
    bool sigma_small = false;  ///< sigma^2 <= mu / 2
    std::optional<double> m_tilde;
    std::optional<double> k_tilde;
    std::optional<double> region_radius_sq;  ///< sigma^2 K~ / m~

    bool all() const noexcept { return r0_gt_one && excess_positive && sigma_small && m_tilde && *m_tilde > 0.0; }
};

ErgodicConditionReport check_ergodic_conditions(const ModelParams& p);

}  // namespace sddelab
