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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sddelab {

/// Grid-aligned window of a scalar history over [t - tau, t], oldest first.
///
/// Non-owning; the engine hands out views into its ring buffer.
struct HistorySegment {
    double dt = 0.0;
    std::span<const double> values;
};

/// Number of grid steps spanning `tau`. Throws ConfigError unless tau is an
/// integer multiple of dt (relative tolerance 1e-9).
std::size_t grid_lag(double tau, double dt);

/// H(phi) = phi(-tau)
struct DiracDelay {};
/// f(s) = 1/tau on [0, tau]
struct UniformKernel {};
/// f(s) proportional to rate * exp(-rate s) on [0, tau]
struct TruncatedExponentialKernel {
    double rate = 1.0;
};
/// Piecewise-linear f through the tabulated (s, f(s)) pairs, zero outside.
struct TabulatedKernel {
    std::vector<double> s;
    std::vector<double> f;
};
/// H(phi) = phi(-tau) / (1 + alpha |phi(-tau)|^q)
struct Saturated {
    double alpha = 0.0;
    double q = 1.0;
};

using IncidenceKind = std::variant<DiracDelay, UniformKernel, TruncatedExponentialKernel, TabulatedKernel, Saturated>;

struct IncidenceSpec {
    IncidenceKind kind = DiracDelay{};
    double tau = 0.0;

    void validate() const;
    bool is_kernel() const noexcept;
    std::string name() const;
};

/// Reads a two-column (s, f) table. Whitespace or comma separated; blank
/// lines and lines starting with '#' are skipped.
TabulatedKernel load_kernel_table(const std::filesystem::path& path);

/// An incidence functional bound to an integration grid.
///
/// Kernel kinds are discretized once with the left-endpoint rule
/// sum_j f(s_j) phi(-s_j) dt, s_j = j dt for j < tau/dt, and the weights are
/// renormalized to sum to one so that constant histories are reproduced
/// exactly.
class DiscreteIncidence {
public:
    DiscreteIncidence(IncidenceSpec spec, double dt);

    /// `values` must hold lag() + 1 entries, oldest first.
    double evaluate(std::span<const double> values) const;
    /// Also checks that the segment's spacing matches the grid.
    double evaluate(const HistorySegment& segment) const;

    std::size_t lag() const noexcept { return lag_; }
    double dt() const noexcept { return dt_; }
    const IncidenceSpec& spec() const noexcept { return spec_; }
    /// Quadrature weights by segment position (oldest first); empty for the
    /// point-evaluation kinds.
    std::span<const double> weights() const noexcept { return weights_; }

private:
    enum class Mode { Endpoint, Kernel, Saturated };

    IncidenceSpec spec_;
    double dt_;
    std::size_t lag_;
    Mode mode_;
    double alpha_ = 0.0;
    double q_ = 1.0;
    std::vector<double> weights_;
};

double evaluate_incidence(const IncidenceSpec& spec, const HistorySegment& segment);

/// Growth and local Lipschitz constants: |H(phi)| <= c (1 + ||phi||) and
/// |H(phi) - H(psi)| <= L_m ||phi - psi|| for ||phi||, ||psi|| <= m.
struct AssumptionAConstants {
    double c = 1.0;
    std::function<double(double)> lipschitz;
};

AssumptionAConstants assumption_a_constants(const IncidenceSpec& spec);

}  // namespace sddelab
