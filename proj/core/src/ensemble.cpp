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
#include "sddelab/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "sddelab/error.hpp"
#include "sddelab/running_stats.hpp"

namespace sddelab {

namespace {

std::size_t probe_record(const SimConfig& sim, double t)
{
    const double spacing = sim.dt * static_cast<double>(sim.record_stride);
    const double ratio = t / spacing;
    const double rounded = std::round(ratio);
    if (!(t >= 0.0) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("probe time " + std::to_string(t) + " is not on the recorded grid (spacing " +
                          std::to_string(spacing) + ")");
    }
    const auto k = static_cast<std::size_t>(rounded);
    if (k >= sim.records()) {
        throw ConfigError("probe time " + std::to_string(t) + " lies beyond t_end");
    }
    return k;
}

struct SliceMoments {
    RunningStats s, i, r, f;

    void merge(const SliceMoments& o) noexcept
    {
        s.merge(o.s);
        i.merge(o.i);
        r.merge(o.r);
        f.merge(o.f);
    }
};

struct BlockResult {
    std::vector<SliceMoments> slices;
    std::uint64_t clamp_events = 0;
    std::uint64_t steps = 0;
    std::size_t completed = 0;
    std::vector<PathFailure> failures;
};

class BlockRunner {
public:
    BlockRunner(const EnsembleConfig& cfg, const std::vector<std::size_t>& probe_records, std::vector<ProbeSamples>& probes)
        : cfg_(cfg), probe_records_(probe_records), probes_(probes), target_(cfg.sim.params.lambda / cfg.sim.params.mu)
    {
    }

    BlockResult run(std::size_t block) const
    {
        BlockResult out;
        out.slices.resize(cfg_.sim.records());
        const std::size_t first = block * kPathsPerBlock;
        const std::size_t last = std::min(cfg_.n_paths, first + kPathsPerBlock);
        for (std::size_t path = first; path < last; ++path) {
            try {
                run_path(path, out);
                ++out.completed;
            } catch (const std::exception& e) {
                out.failures.push_back({path, e.what()});
                for (auto& probe : probes_) {
                    probe.s[path] = probe.i[path] = probe.r[path] = std::numeric_limits<double>::quiet_NaN();
                }
            }
        }
        return out;
    }

private:
    void record(std::vector<SliceMoments>& slices, std::size_t k, const State& x) const
    {
        SliceMoments& m = slices[k];
        m.s.push(x.s);
        m.i.push(x.i);
        m.r.push(x.r);
        if (cfg_.functional == TrackedFunctional::DiseaseFreeDeviation) {
            const double u = x.s - target_;
            m.f.push(u * u + x.i + x.r);
        }
    }

    void run_path(std::size_t path, BlockResult& out) const
    {
        PathIntegrator integrator(cfg_.sim, path_stream(cfg_.base_seed, path));
        const std::size_t stride = cfg_.sim.record_stride;
        // One path contributes one sample per slice; stage it so a mid-path
        // failure can be discarded.
        std::vector<State> staged;
        staged.reserve(cfg_.sim.records());
        staged.push_back(integrator.state());
        while (!integrator.done()) {
            integrator.advance();
            if (integrator.step() % stride == 0) {
                staged.push_back(integrator.state());
            }
        }
        for (std::size_t k = 0; k < staged.size(); ++k) {
            record(out.slices, k, staged[k]);
        }
        for (std::size_t p = 0; p < probe_records_.size(); ++p) {
            const State& x = staged[probe_records_[p]];
            probes_[p].s[path] = x.s;
            probes_[p].i[path] = x.i;
            probes_[p].r[path] = x.r;
        }
        const auto& c = integrator.clamp_events();
        out.clamp_events += c[0] + c[1] + c[2];
        out.steps += integrator.total_steps();
    }

    const EnsembleConfig& cfg_;
    const std::vector<std::size_t>& probe_records_;
    std::vector<ProbeSamples>& probes_;
    double target_;
};

void drop_failed(std::vector<double>& v)
{
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
}

}  // namespace

void EnsembleConfig::validate() const
{
    sim.validate();
    if (n_paths == 0) {
        throw ConfigError("ensemble needs n_paths >= 1");
    }
    for (double t : probe_times) {
        probe_record(sim, t);
    }
}

const std::vector<double>& ProbeSamples::component(Component c) const noexcept
{
    switch (c) {
    case Component::S:
        return s;
    case Component::I:
        return i;
    case Component::R:
        break;
    }
    return r;
}

EnsembleSummary run_ensemble(const EnsembleConfig& cfg)
{
    cfg.validate();
    const std::size_t records = cfg.sim.records();

    std::vector<std::size_t> probe_records;
    std::vector<ProbeSamples> probes;
    for (double t : cfg.probe_times) {
        ProbeSamples ps;
        ps.time = t;
        ps.record = probe_record(cfg.sim, t);
        ps.s.assign(cfg.n_paths, 0.0);
        ps.i.assign(cfg.n_paths, 0.0);
        ps.r.assign(cfg.n_paths, 0.0);
        probe_records.push_back(ps.record);
        probes.push_back(std::move(ps));
    }

    const BlockRunner runner(cfg, probe_records, probes);
    const std::size_t n_blocks = (cfg.n_paths + kPathsPerBlock - 1) / kPathsPerBlock;
    unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));

    std::vector<SliceMoments> total(records);
    std::uint64_t clamp_events = 0;
    std::uint64_t steps = 0;
    std::size_t completed = 0;
    std::vector<PathFailure> failures;

    std::mutex merge_mutex;
    std::map<std::size_t, BlockResult> pending;
    std::size_t next_merge = 0;
    std::atomic<std::size_t> next_block{0};
    std::atomic<bool> abort{false};
    std::exception_ptr fatal;

    auto merge_ready = [&] {
        for (auto it = pending.find(next_merge); it != pending.end(); it = pending.find(next_merge)) {
            BlockResult& b = it->second;
            for (std::size_t k = 0; k < records; ++k) {
                total[k].merge(b.slices[k]);
            }
            clamp_events += b.clamp_events;
            steps += b.steps;
            completed += b.completed;
            failures.insert(failures.end(), b.failures.begin(), b.failures.end());
            pending.erase(it);
            ++next_merge;
        }
    };

    auto worker = [&] {
        try {
            while (!abort.load(std::memory_order_relaxed)) {
                const std::size_t block = next_block.fetch_add(1);
                if (block >= n_blocks) {
                    return;
                }
                BlockResult result = runner.run(block);
                std::lock_guard lock(merge_mutex);
                pending.emplace(block, std::move(result));
                merge_ready();
                if (failures.size() > cfg.failure_budget) {
                    abort = true;
                }
            }
        } catch (...) {
            std::lock_guard lock(merge_mutex);
            if (!fatal) {
                fatal = std::current_exception();
            }
            abort = true;
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (fatal) {
        std::rethrow_exception(fatal);
    }
    if (failures.size() > cfg.failure_budget) {
        const PathFailure& first = failures.front();
        throw EnsembleError(first.path, "ensemble aborted: " + std::to_string(failures.size()) +
                                            " path failure(s) exceed the budget of " +
                                            std::to_string(cfg.failure_budget) + "; first at path " +
                                            std::to_string(first.path) + ": " + first.message);
    }

    EnsembleSummary out;
    out.n_paths = cfg.n_paths;
    out.n_completed = completed;
    out.failures = std::move(failures);
    out.clamp_rate = steps > 0 ? static_cast<double>(clamp_events) / static_cast<double>(steps) : 0.0;
    out.clamp_flagged = out.clamp_rate > kClampRateWarning;
    out.times.resize(records);
    out.mean.resize(records);
    out.variance.resize(records);
    const double spacing = cfg.sim.dt * static_cast<double>(cfg.sim.record_stride);
    for (std::size_t k = 0; k < records; ++k) {
        out.times[k] = static_cast<double>(k) * spacing;
        out.mean[k] = {total[k].s.mean(), total[k].i.mean(), total[k].r.mean()};
        out.variance[k] = {total[k].s.variance(), total[k].i.variance(), total[k].r.variance()};
    }
    if (cfg.functional != TrackedFunctional::None) {
        out.functional_mean.resize(records);
        for (std::size_t k = 0; k < records; ++k) {
            out.functional_mean[k] = total[k].f.mean();
        }
        if (out.times.back() > 0.0) {
            out.time_average_estimate = trapezoid_time_average(out.times, out.functional_mean);
            out.time_average_tail = trapezoid_time_average(out.times, out.functional_mean, 0.9 * out.times.back());
        }
    }
    if (!out.failures.empty()) {
        for (auto& p : probes) {
            drop_failed(p.s);
            drop_failed(p.i);
            drop_failed(p.r);
        }
    }
    out.probes = std::move(probes);
    return out;
}

double trapezoid_time_average(const std::vector<double>& times, const std::vector<double>& values, double from)
{
    if (times.size() != values.size() || times.empty()) {
        throw ConfigError("time average needs matching, non-empty time and value series");
    }
    const auto start = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), from) - times.begin());
    if (start + 1 >= times.size() || !(times.back() > times[start])) {
        throw ConfigError("time average over an empty horizon is undefined");
    }
    double acc = 0.0;
    for (std::size_t k = start + 1; k < times.size(); ++k) {
        acc += 0.5 * (values[k] + values[k - 1]) * (times[k] - times[k - 1]);
    }
    return acc / (times.back() - times[start]);
}

TimeAverage time_average_functional(const EnsembleConfig& cfg)
{
    if (!(cfg.sim.t_end > 0.0)) {
        throw ConfigError("time average over an empty horizon is undefined");
    }
    EnsembleConfig tracked = cfg;
    tracked.functional = TrackedFunctional::DiseaseFreeDeviation;
    const EnsembleSummary summary = run_ensemble(tracked);
    if (!summary.time_average_estimate) {
        throw ConfigError("time average over an empty horizon is undefined");
    }
    TimeAverage out;
    out.estimate = *summary.time_average_estimate;
    out.tail = *summary.time_average_tail;
    out.disease_free_regime = check_disease_free_conditions(cfg.sim.params).conditions.all();
    return out;
}

OccupationMeasure occupation_measure(const Trajectory& trajectory, double burn_in, const ComponentBins& bins)
{
    if (trajectory.times.empty() || !(burn_in < trajectory.times.back())) {
        throw ConfigError("burn-in must be shorter than the trajectory horizon");
    }
    std::array<std::vector<double>, 3> values;
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        if (trajectory.times[k] > burn_in) {
            values[0].push_back(trajectory.states[k].s);
            values[1].push_back(trajectory.states[k].i);
            values[2].push_back(trajectory.states[k].r);
        }
    }
    if (values[0].empty()) {
        throw ConfigError("no recorded states after the burn-in window");
    }
    return {histogram(values[0], bins[0]), histogram(values[1], bins[1]), histogram(values[2], bins[2])};
}

}  // namespace sddelab
