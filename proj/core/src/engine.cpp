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
#include "sddelab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sddelab/error.hpp"

namespace sddelab {

namespace {

State interpolate_history(const std::vector<HistoryPoint>& table, double theta)
{
    const auto hi = std::lower_bound(table.begin(), table.end(), theta,
                                     [](const HistoryPoint& pt, double t) { return pt.theta < t; });
    if (hi == table.begin()) {
        return hi->x;
    }
    if (hi == table.end()) {
        return table.back().x;
    }
    const auto lo = hi - 1;
    const double w = (theta - lo->theta) / (hi->theta - lo->theta);
    return {(1.0 - w) * lo->x.s + w * hi->x.s, (1.0 - w) * lo->x.i + w * hi->x.i, (1.0 - w) * lo->x.r + w * hi->x.r};
}

State history_at(const InitialHistory& h, double theta)
{
    if (const auto* c = std::get_if<State>(&h)) {
        return *c;
    }
    return interpolate_history(std::get<std::vector<HistoryPoint>>(h), theta);
}

void check_non_negative(const State& x, const char* where)
{
    if (!(x.s >= 0.0) || !(x.i >= 0.0) || !(x.r >= 0.0) || !std::isfinite(x.total())) {
        throw ConfigError(std::string("initial history must be finite and non-negative ") + where);
    }
}

// Shared by the reduced total and the comparison process so that the two
// recursions agree bit for bit when the loss term is zero.
double total_step(const ModelParams& p, double n, double loss, double dt, double dw)
{
    return n + (p.lambda - p.mu * n - loss) * dt + p.sigma * n * dw;
}

}  // namespace

void SimConfig::validate() const
{
    params.validate();
    incidence.validate();
    if (std::abs(incidence.tau - params.tau) > 1e-12 * std::max(1.0, params.tau)) {
        throw ConfigError("incidence tau differs from model tau");
    }
    grid_lag(params.tau, dt);
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw ConfigError("t_end must be finite and >= 0");
    }
    const double ratio = t_end / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("t_end must be an integer multiple of dt");
    }
    if (record_stride == 0) {
        throw ConfigError("record_stride must be >= 1");
    }
    if (const auto* table = std::get_if<std::vector<HistoryPoint>>(&initial_history)) {
        if (table->empty()) {
            throw ConfigError("tabulated initial history is empty");
        }
        for (std::size_t j = 0; j < table->size(); ++j) {
            check_non_negative((*table)[j].x, "(tabulated row)");
            if (j > 0 && !((*table)[j].theta > (*table)[j - 1].theta)) {
                throw ConfigError("tabulated initial history offsets must be strictly increasing");
            }
        }
        const double tol = 1e-9 * std::max(1.0, params.tau);
        if (table->front().theta > -params.tau + tol || table->back().theta < -tol) {
            throw ConfigError("tabulated initial history must cover [-tau, 0]");
        }
    } else {
        check_non_negative(std::get<State>(initial_history), "(constant)");
    }
    if (!(initial_state().total() > 0.0)) {
        throw ConfigError("initial total population S(0) + I(0) + R(0) must be > 0");
    }
}

std::size_t SimConfig::steps() const
{
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

std::size_t SimConfig::records() const
{
    return steps() / record_stride + 1;
}

State SimConfig::initial_state() const
{
    return history_at(initial_history, 0.0);
}

SimConfig SimConfig::deterministic() const
{
    SimConfig out = *this;
    out.params.sigma = 0.0;
    return out;
}

double Trajectory::clamp_rate() const noexcept
{
    if (steps == 0) {
        return 0.0;
    }
    return static_cast<double>(clamp_events[0] + clamp_events[1] + clamp_events[2]) / static_cast<double>(steps);
}

State em_step(const State& x, const HistorySegment& segment, const ModelParams& p, const DiscreteIncidence& h,
              double dt, double xi)
{
    const double incidence = h.evaluate(segment);
    const State f = drift(p, x, incidence);
    const double noise = p.sigma * xi * std::sqrt(dt);
    const State next{x.s + f.s * dt + x.s * noise, x.i + f.i * dt + x.i * noise, x.r + f.r * dt + x.r * noise};
    if (!std::isfinite(next.s)) {
        throw NumericalError("S", -1, "non-finite S after Euler-Maruyama step");
    }
    if (!std::isfinite(next.i)) {
        throw NumericalError("I", -1, "non-finite I after Euler-Maruyama step");
    }
    if (!std::isfinite(next.r)) {
        throw NumericalError("R", -1, "non-finite R after Euler-Maruyama step");
    }
    return next;
}

State em_step(const State& x, const HistorySegment& segment, const ModelParams& p, const IncidenceSpec& h, double dt,
              double xi)
{
    return em_step(x, segment, p, DiscreteIncidence(h, dt), dt, xi);
}

PathIntegrator::PathIntegrator(const SimConfig& cfg, StreamId id)
    : params_(cfg.params),
      incidence_((cfg.validate(), cfg.incidence), cfg.dt),
      policy_(cfg.clamp_policy),
      dt_(cfg.dt),
      sqrt_dt_(std::sqrt(cfg.dt)),
      steps_(cfg.steps()),
      state_(cfg.initial_state()),
      noise_(id)
{
    const std::size_t lag = incidence_.lag();
    const std::size_t cap = lag + 1;
    ring_.assign(2 * cap, 0.0);
    for (std::size_t j = 0; j < cap; ++j) {
        const double theta = -static_cast<double>(lag - j) * dt_;
        const double v = j == lag ? state_.i : history_at(cfg.initial_history, theta).i;
        ring_[j] = v;
        ring_[j + cap] = v;
    }
}

HistorySegment PathIntegrator::segment() const noexcept
{
    const std::size_t cap = incidence_.lag() + 1;
    return {dt_, std::span<const double>(ring_).subspan(head_, cap)};
}

void PathIntegrator::advance()
{
    const double xi = noise_();
    last_dw_ = xi * sqrt_dt_;
    State next;
    try {
        next = em_step(state_, segment(), params_, incidence_, dt_, xi);
    } catch (const NumericalError& e) {
        throw NumericalError(e.component(), static_cast<std::int64_t>(step_ + 1),
                             std::string(e.what()) + " at step " + std::to_string(step_ + 1));
    }
    ++step_;

    double* parts[3] = {&next.s, &next.i, &next.r};
    for (std::size_t c = 0; c < 3; ++c) {
        if (*parts[c] >= 0.0) {
            continue;
        }
        if (policy_ == ClampPolicy::FailOnNegative) {
            const auto name = std::string(component_name(static_cast<Component>(c)));
            throw NegativeStateError(name, static_cast<std::int64_t>(step_),
                                     "component " + name + " became negative at step " + std::to_string(step_));
        }
        *parts[c] = 0.0;
        ++clamps_[c];
    }
    state_ = next;

    const std::size_t cap = incidence_.lag() + 1;
    ring_[head_] = state_.i;
    ring_[head_ + cap] = state_.i;
    head_ = head_ + 1 == cap ? 0 : head_ + 1;
}

namespace {

template <class OnStep>
Trajectory drive(const SimConfig& cfg, StreamId id, OnStep&& on_step)
{
    PathIntegrator path(cfg, id);
    Trajectory out;
    const std::size_t stride = cfg.record_stride;
    out.times.reserve(cfg.records());
    out.states.reserve(cfg.records());
    out.times.push_back(0.0);
    out.states.push_back(path.state());
    while (!path.done()) {
        const State before = path.state();
        path.advance();
        on_step(path, before);
        if (path.step() % stride == 0) {
            out.times.push_back(path.time());
            out.states.push_back(path.state());
        }
    }
    out.steps = path.total_steps();
    out.draws_consumed = path.draws();
    out.clamp_events = path.clamp_events();
    return out;
}

}  // namespace

Trajectory simulate_path(const SimConfig& cfg, StreamId id)
{
    return drive(cfg, id, [](const PathIntegrator&, const State&) {});
}

CoupledRun simulate_coupled(const SimConfig& cfg, StreamId id)
{
    const ModelParams& p = cfg.params;
    const std::size_t stride = cfg.record_stride;
    const double n0 = cfg.initial_state().total();

    CoupledRun run;
    double reduced = n0;
    double comparison = n0;
    for (ScalarTrajectory* t : {&run.reduced_total, &run.comparison}) {
        t->times.reserve(cfg.records());
        t->values.reserve(cfg.records());
        t->times.push_back(0.0);
        t->values.push_back(n0);
    }

    run.path = drive(cfg, id, [&](const PathIntegrator& path, const State& before) {
        const double dw = path.last_increment();
        reduced = total_step(p, reduced, p.delta * before.i, cfg.dt, dw);
        comparison = total_step(p, comparison, 0.0, cfg.dt, dw);
        if (!std::isfinite(comparison)) {
            throw NumericalError("N~", static_cast<std::int64_t>(path.step()), "non-finite comparison process");
        }
        if (comparison < 0.0) {
            if (cfg.clamp_policy == ClampPolicy::FailOnNegative) {
                throw NegativeStateError("N~", static_cast<std::int64_t>(path.step()),
                                         "comparison process became negative at step " + std::to_string(path.step()));
            }
            comparison = 0.0;
            ++run.comparison.clamp_events;
        }
        if (path.step() % stride == 0) {
            run.reduced_total.times.push_back(path.time());
            run.reduced_total.values.push_back(reduced);
            run.comparison.times.push_back(path.time());
            run.comparison.values.push_back(comparison);
        }
    });
    run.reduced_total.draws_consumed = run.path.draws_consumed;
    run.comparison.draws_consumed = run.path.draws_consumed;
    return run;
}

ScalarTrajectory simulate_reduced_total(const SimConfig& cfg, StreamId id)
{
    return simulate_coupled(cfg, id).reduced_total;
}

ScalarTrajectory simulate_comparison(const SimConfig& cfg, StreamId id)
{
    return simulate_coupled(cfg, id).comparison;
}

}  // namespace sddelab
