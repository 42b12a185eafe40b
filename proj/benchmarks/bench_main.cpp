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
#include <benchmark/benchmark.h>

#include "sddelab/engine.hpp"
#include "sddelab/ensemble.hpp"
#include "sddelab/random.hpp"
#include "sddelab/stats.hpp"

namespace {

using namespace sddelab;

SimConfig reference_sim(double t_end)
{
    SimConfig cfg;
    cfg.params = reference_params(0.2);
    cfg.incidence = {DiracDelay{}, cfg.params.tau};
    cfg.t_end = t_end;
    return cfg;
}

void BM_PhiloxBlock(benchmark::State& state)
{
    Philox4x32::Counter ctr{0, 0, 0, 0};
    for (auto _ : state) {
        ctr = Philox4x32::generate(ctr, {1, 2});
        benchmark::DoNotOptimize(ctr);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_NormalDraw(benchmark::State& state)
{
    NormalStream s({1, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(s());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NormalDraw);

void BM_EmStep(benchmark::State& state)
{
    const ModelParams p = reference_params(0.2);
    const IncidenceSpec spec = state.range(0) == 0 ? IncidenceSpec{DiracDelay{}, 10.0} : IncidenceSpec{UniformKernel{}, 10.0};
    const DiscreteIncidence h(spec, 0.1);
    const std::vector<double> hist(h.lag() + 1, 0.3);
    State x{0.7, 0.3, 0.0};
    for (auto _ : state) {
        x = em_step(x, {0.1, hist}, p, h, 0.1, 0.1);
        benchmark::DoNotOptimize(x);
    }
    state.SetLabel(spec.name());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EmStep)->Arg(0)->Arg(1);

void BM_SimulatePath(benchmark::State& state)
{
    const SimConfig cfg = reference_sim(static_cast<double>(state.range(0)));
    std::uint64_t path = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(cfg, {1, path++}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.steps()));
}
BENCHMARK(BM_SimulatePath)->Arg(300)->Arg(10000);

void BM_Ensemble(benchmark::State& state)
{
    EnsembleConfig cfg;
    cfg.sim = reference_sim(200.0);
    cfg.n_paths = 1024;
    cfg.probe_times = {160.0, 180.0, 200.0};
    cfg.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(cfg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_paths * cfg.sim.steps()));
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_GaussianKde(benchmark::State& state)
{
    const auto x = brownian_increments({3, 0}, static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_kde(x));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GaussianKde)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_KsDistance(benchmark::State& state)
{
    const auto a = brownian_increments({4, 0}, 10000, 1.0);
    const auto b = brownian_increments({5, 0}, 10000, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ks_distance(a, b));
    }
}
BENCHMARK(BM_KsDistance)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
