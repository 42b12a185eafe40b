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
#include <optional>
#include <string>
#include <vector>

#include "sddelab/engine.hpp"
#include "sddelab/stats.hpp"

namespace sddelab {

/// Scalar functional averaged over the ensemble at every recorded time.
enum class TrackedFunctional {
    None,
    /// (S - lambda/mu)^2 + I + R, the integrand of the disease-free bound.
    DiseaseFreeDeviation,
};

struct EnsembleConfig {
    SimConfig sim;
    std::size_t n_paths = 1;
    std::uint64_t base_seed = 0;
    std::vector<double> probe_times;
    TrackedFunctional functional = TrackedFunctional::None;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned workers = 1;
    /// Path failures tolerated before the whole run is aborted.
    std::size_t failure_budget = 0;

    void validate() const;
};

/// Paths are simulated in fixed blocks of this many indices; blocks are
/// merged in index order, which makes every reduction independent of the
/// worker count.
inline constexpr std::size_t kPathsPerBlock = 64;

inline StreamId path_stream(std::uint64_t base_seed, std::size_t path) noexcept
{
    return {base_seed, static_cast<std::uint64_t>(path)};
}

struct ProbeSamples {
    double time = 0.0;
    std::size_t record = 0;
    std::vector<double> s;
    std::vector<double> i;
    std::vector<double> r;

    const std::vector<double>& component(Component c) const noexcept;
};

struct PathFailure {
    std::size_t path = 0;
    std::string message;
};

struct EnsembleSummary {
    std::vector<double> times;
    std::vector<State> mean;
    std::vector<State> variance;  ///< population variance across paths
    std::vector<double> functional_mean;  ///< empty unless a functional is tracked
    std::vector<ProbeSamples> probes;
    std::optional<double> time_average_estimate;
    /// Same average restricted to the last 10% of the horizon.
    std::optional<double> time_average_tail;
    double clamp_rate = 0.0;
    bool clamp_flagged = false;
    std::size_t n_paths = 0;
    std::size_t n_completed = 0;
    std::vector<PathFailure> failures;
};

EnsembleSummary run_ensemble(const EnsembleConfig& cfg);

/// (1/T) * trapezoid integral of `values` over `times`, T = times.back(),
/// restricted to times >= `from` (the divisor is then the window length).
double trapezoid_time_average(const std::vector<double>& times, const std::vector<double>& values, double from = 0.0);

struct TimeAverage {
    double estimate = 0.0;
    double tail = 0.0;
    /// False when the disease-free bound conditions do not hold.
    bool disease_free_regime = false;
};

/// Finite-horizon estimate of (1/t) int_0^t E[(S - lambda/mu)^2 + I + R] ds.
TimeAverage time_average_functional(const EnsembleConfig& cfg);

using ComponentBins = std::array<HistogramSpec, 3>;
using OccupationMeasure = std::array<Histogram, 3>;

inline double default_burn_in(double t_end) noexcept
{
    return 0.2 * t_end;
}

/// Marginal histograms of S, I and R over the recorded times in
/// (burn_in, t_end]. Each histogram carries unit mass.
OccupationMeasure occupation_measure(const Trajectory& trajectory, double burn_in, const ComponentBins& bins);

}  // namespace sddelab
