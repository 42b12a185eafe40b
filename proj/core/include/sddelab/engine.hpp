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
#include <span>
#include <variant>
#include <vector>

#include "sddelab/incidence.hpp"
#include "sddelab/model.hpp"
#include "sddelab/random.hpp"

namespace sddelab {

enum class ClampPolicy { ClampToZero, FailOnNegative };

/// Sample of a tabulated initial history at offset theta in [-tau, 0].
struct HistoryPoint {
    double theta = 0.0;
    State x;
};

/// Either a constant history or a piecewise-linear table covering [-tau, 0].
using InitialHistory = std::variant<State, std::vector<HistoryPoint>>;

struct SimConfig {
    ModelParams params;
    IncidenceSpec incidence;  ///< incidence.tau must equal params.tau
    double dt = 0.1;
    double t_end = 0.0;
    InitialHistory initial_history = State{0.7, 0.3, 0.0};
    ClampPolicy clamp_policy = ClampPolicy::ClampToZero;
    std::size_t record_stride = 1;

    /// Throws ConfigError; also rejects t_end that is not a whole number of steps.
    void validate() const;
    std::size_t steps() const;
    /// Number of recorded states including the initial one.
    std::size_t records() const;
    /// Initial (S, I, R) at time zero.
    State initial_state() const;
    /// Same configuration with sigma = 0.
    SimConfig deterministic() const;
};

/// Recorded sample path.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::uint64_t steps = 0;
    std::uint64_t draws_consumed = 0;
    std::array<std::uint64_t, 3> clamp_events{};  ///< S, I, R

    /// Clamp events (all components) per integration step.
    double clamp_rate() const noexcept;
};

struct ScalarTrajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::uint64_t draws_consumed = 0;
    std::uint64_t clamp_events = 0;
};

/// Runs flagged as discretization-stressed above this clamp rate.
inline constexpr double kClampRateWarning = 1e-3;

/// One Euler-Maruyama step. `segment` is the I-history ending at the
/// current time and `xi` a standard normal draw shared by all components.
/// Never clamps; throws NumericalError on a non-finite result.
State em_step(const State& x, const HistorySegment& segment, const ModelParams& p, const DiscreteIncidence& h,
              double dt, double xi);
State em_step(const State& x, const HistorySegment& segment, const ModelParams& p, const IncidenceSpec& h, double dt,
              double xi);

/// Incremental driver for a single path; keeps the I-history ring buffer
/// and the noise stream. Used directly by the ensemble to avoid storing
/// whole trajectories.
class PathIntegrator {
public:
    PathIntegrator(const SimConfig& cfg, StreamId id);

    bool done() const noexcept { return step_ >= steps_; }
    /// Advances one step and applies the clamp policy.
    void advance();

    std::size_t step() const noexcept { return step_; }
    std::size_t total_steps() const noexcept { return steps_; }
    double time() const noexcept { return static_cast<double>(step_) * dt_; }
    const State& state() const noexcept { return state_; }
    /// Brownian increment used by the most recent step.
    double last_increment() const noexcept { return last_dw_; }
    std::uint64_t draws() const noexcept { return noise_.draws(); }
    const std::array<std::uint64_t, 3>& clamp_events() const noexcept { return clamps_; }
    HistorySegment segment() const noexcept;

private:
    ModelParams params_;
    DiscreteIncidence incidence_;
    ClampPolicy policy_;
    double dt_;
    double sqrt_dt_;
    std::size_t steps_;
    std::size_t step_ = 0;
    State state_;
    double last_dw_ = 0.0;
    NormalStream noise_;
    std::array<std::uint64_t, 3> clamps_{};
    // Mirrored ring: value j lives at j and j + cap so the window is contiguous.
    std::vector<double> ring_;
    std::size_t head_ = 0;
};

Trajectory simulate_path(const SimConfig& cfg, StreamId id);

/// Path together with the total population N recomputed from its own
/// recursion and the dominating comparison process, all on the same draws.
struct CoupledRun {
    Trajectory path;
    ScalarTrajectory reduced_total;
    ScalarTrajectory comparison;
};

CoupledRun simulate_coupled(const SimConfig& cfg, StreamId id);

/// N_{k+1} = N_k + (lambda - mu N_k - delta I_k) dt + sigma N_k dW_k
ScalarTrajectory simulate_reduced_total(const SimConfig& cfg, StreamId id);
/// N~_{k+1} = N~_k + (lambda - mu N~_k) dt + sigma N~_k dW_k
ScalarTrajectory simulate_comparison(const SimConfig& cfg, StreamId id);

}  // namespace sddelab
