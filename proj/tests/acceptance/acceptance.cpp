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
// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sddelab/engine.hpp"
#include "sddelab/ensemble.hpp"
#include "sddelab/incidence.hpp"
#include "sddelab/model.hpp"
#include "sddelab/running_stats.hpp"
#include "sddelab/stats.hpp"

using namespace sddelab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* spec, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

SimConfig reference_sim(double beta, double t_end)
{
    SimConfig cfg;
    cfg.params = reference_params(beta);
    cfg.incidence = {DiracDelay{}, cfg.params.tau};
    cfg.dt = 0.1;
    cfg.t_end = t_end;
    cfg.initial_history = State{0.7, 0.3, 0.0};
    return cfg;
}

double max_abs(const State& x)
{
    return std::max({std::abs(x.s), std::abs(x.i), std::abs(x.r)});
}

double max_abs_diff(const State& a, const State& b)
{
    return max_abs({a.s - b.s, a.i - b.i, a.r - b.r});
}

// Shared by criteria 8 and 9.
const EnsembleSummary& endemic_ensemble()
{
    static const EnsembleSummary summary = [] {
        EnsembleConfig cfg;
        cfg.sim = reference_sim(0.2, 200.0);
        cfg.n_paths = 10000;
        cfg.base_seed = 1;
        cfg.probe_times = {160.0, 180.0, 200.0};
        cfg.workers = 0;
        return run_ensemble(cfg);
    }();
    return summary;
}

Outcome threshold_reproduction()
{
    const double low = basic_reproduction_number(reference_params(0.08));
    const double high = basic_reproduction_number(reference_params(0.2));
    return {std::abs(low - 0.8889) < 1e-3 && std::abs(high - 2.222) < 1e-3,
            "R0=" + fmt("%.6f", low) + " (beta=0.08), R0=" + fmt("%.6f", high) + " (beta=0.2)"};
}

Outcome endemic_excess()
{
    const ModelParams p = reference_params(0.2);
    const EquilibriaReport eq = equilibria(p);
    if (!eq.e_star) {
        return {false, "no endemic equilibrium"};
    }
    const double drift_norm = max_abs(drift(p, *eq.e_star, eq.e_star->i));
    return {std::abs(*eq.excess - 0.022) < 1e-3 && drift_norm < 1e-10,
            "mu S* - eta R* = " + fmt("%.6f", *eq.excess) + ", |drift(E*)| = " + fmt("%.2e", drift_norm)};
}

Outcome condition_checkers()
{
    const DiseaseFreeBoundReport d = check_disease_free_conditions(reference_params(0.08));
    const ErgodicConditionReport e = check_ergodic_conditions(reference_params(0.2));
    return {d.conditions.all() && e.all(),
            std::string("disease-free (beta=0.08): ") + (d.conditions.all() ? "PASS" : "FAIL") +
                ", ergodic (beta=0.2): " + (e.all() ? "PASS" : "FAIL") +
                (d.bound ? ", bound=" + fmt("%.4f", *d.bound) : std::string())};
}

Outcome sum_exactness()
{
    const SimConfig cfg = reference_sim(0.2, 10000.0);  // 1e5 steps
    const CoupledRun run = simulate_coupled(cfg, {20261015, 0});
    double worst = 0.0;
    for (std::size_t k = 0; k < run.path.states.size(); ++k) {
        worst = std::max(worst, std::abs(run.path.states[k].total() - run.reduced_total.values[k]));
    }
    const auto clamps = run.path.clamp_events[0] + run.path.clamp_events[1] + run.path.clamp_events[2];
    return {worst < 1e-10 && run.path.steps == 100000 && run.path.draws_consumed == run.path.steps,
            std::to_string(run.path.steps) + " steps, max |S+I+R-N| = " + fmt("%.3e", worst) + ", clamps " +
                std::to_string(clamps)};
}

Outcome comparison_mean()
{
    const SimConfig cfg = reference_sim(0.2, 200.0);
    const ModelParams& p = cfg.params;
    RunningStats st;
    for (std::size_t path = 0; path < 10000; ++path) {
        st.push(simulate_comparison(cfg, path_stream(5, path)).values.back());
    }
    const double n0 = cfg.initial_state().total();
    const double target = p.lambda / p.mu + (n0 - p.lambda / p.mu) * std::exp(-p.mu * cfg.t_end);
    const double se = std::sqrt(st.sample_variance() / static_cast<double>(st.count()));
    const double z = (st.mean() - target) / se;
    return {std::abs(z) <= 3.0, "mean " + fmt("%.6f", st.mean()) + " vs " + fmt("%.6f", target) + ", SE " +
                                    fmt("%.2e", se) + ", z = " + fmt("%.2f", z)};
}

Outcome deterministic_limits()
{
    const Trajectory low = simulate_path(reference_sim(0.08, 3000.0).deterministic(), {1, 0});
    const Trajectory high = simulate_path(reference_sim(0.2, 5000.0).deterministic(), {1, 0});
    const double d0 = max_abs_diff(low.states.back(), {1.0, 0.0, 0.0});
    const double d1 = max_abs_diff(high.states.back(), *equilibria(reference_params(0.2)).e_star);
    return {d0 < 1e-2 && d1 < 1e-2,
            "|x(3000)-E0| = " + fmt("%.2e", d0) + ", |x(5000)-E*| = " + fmt("%.2e", d1)};
}

Outcome bound_check()
{
    EnsembleConfig cfg;
    cfg.sim = reference_sim(0.08, 2000.0);
    cfg.n_paths = 2000;
    cfg.base_seed = 7;
    cfg.workers = 0;
    const TimeAverage avg = time_average_functional(cfg);
    const auto bound = check_disease_free_conditions(cfg.sim.params).bound;
    if (!bound) {
        return {false, "bound unavailable"};
    }
    return {avg.disease_free_regime && avg.estimate <= *bound,
            "time average " + fmt("%.4e", avg.estimate) + " (last 10%: " + fmt("%.4e", avg.tail) + ") <= bound " +
                fmt("%.4f", *bound) + ", ratio " + fmt("%.1e", avg.estimate / *bound)};
}

Outcome stationarity()
{
    const EnsembleSummary& s = endemic_ensemble();
    double worst_ks = 0.0;
    double worst_overlay = 0.0;
    constexpr std::array<Component, 3> comps{Component::S, Component::I, Component::R};
    for (Component c : comps) {
        // Density curves evaluated on one shared grid with a shared bandwidth.
        std::vector<double> pooled;
        for (const auto& p : s.probes) {
            pooled.insert(pooled.end(), p.component(c).begin(), p.component(c).end());
        }
        const double bw = silverman_bandwidth(pooled);
        std::vector<DensityEstimate> curves;
        for (const auto& p : s.probes) {
            curves.push_back(gaussian_kde(p.component(c), bw));
        }
        for (std::size_t a = 0; a < s.probes.size(); ++a) {
            for (std::size_t b = a + 1; b < s.probes.size(); ++b) {
                worst_ks = std::max(worst_ks, ks_distance(s.probes[a].component(c), s.probes[b].component(c)));
            }
        }
        // Overlay gap: sup-norm difference of the curves relative to their peak.
        const double lo = *std::min_element(pooled.begin(), pooled.end());
        const double hi = *std::max_element(pooled.begin(), pooled.end());
        const auto eval = [&](const DensityEstimate& d, double x) {
            if (x <= d.grid.front() || x >= d.grid.back()) {
                return 0.0;
            }
            const double step = (d.grid.back() - d.grid.front()) / static_cast<double>(d.grid.size() - 1);
            const auto k = static_cast<std::size_t>((x - d.grid.front()) / step);
            const double w = (x - d.grid[k]) / step;
            return (1.0 - w) * d.density[k] + w * d.density[std::min(k + 1, d.grid.size() - 1)];
        };
        double peak = 0.0;
        double gap = 0.0;
        for (int j = 0; j <= 400; ++j) {
            const double x = lo + (hi - lo) * j / 400.0;
            double mn = 1e300;
            double mx = 0.0;
            for (const auto& d : curves) {
                const double v = eval(d, x);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            peak = std::max(peak, mx);
            gap = std::max(gap, mx - mn);
        }
        worst_overlay = std::max(worst_overlay, gap / peak);
    }
    return {worst_ks < 0.03, "max pairwise KS " + fmt("%.4f", worst_ks) + " (critical " +
                                 fmt("%.4f", ks_critical_value(10000, 10000, 1e-3)) +
                                 "), max density gap " + fmt("%.1f", 100.0 * worst_overlay) + "% of peak"};
}

Outcome ergodicity()
{
    const EnsembleSummary& s = endemic_ensemble();
    const ProbeSamples& at200 = s.probes.back();
    SimConfig cfg = reference_sim(0.2, 100000.0);
    const Trajectory path = simulate_path(cfg, {42, 0});
    const double burn_in = 20000.0;

    ComponentBins bins;
    constexpr std::array<Component, 3> comps{Component::S, Component::I, Component::R};
    for (std::size_t c = 0; c < 3; ++c) {
        const auto& ens = at200.component(comps[c]);
        double lo = *std::min_element(ens.begin(), ens.end());
        double hi = *std::max_element(ens.begin(), ens.end());
        for (std::size_t k = 0; k < path.times.size(); ++k) {
            if (path.times[k] > burn_in) {
                const double v = c == 0 ? path.states[k].s : c == 1 ? path.states[k].i : path.states[k].r;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        bins[c] = {lo, hi, 30};
    }
    const OccupationMeasure occ = occupation_measure(path, burn_in, bins);
    double worst = 0.0;
    std::string detail;
    for (std::size_t c = 0; c < 3; ++c) {
        const double tv = total_variation(occ[c], histogram(at200.component(comps[c]), bins[c]));
        worst = std::max(worst, tv);
        detail += std::string(c ? ", " : "") + "TV_" + std::string(component_name(comps[c])) + " " + fmt("%.4f", tv);
    }
    return {worst < 0.1, detail + " (30 bins over the pooled range)"};
}

Outcome incidence_suite()
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double dt = 0.1;
    const double tau = 10.0;
    const std::vector<IncidenceSpec> kinds{
        {DiracDelay{}, tau},
        {UniformKernel{}, tau},
        {TruncatedExponentialKernel{0.5}, tau},
        {TabulatedKernel{{0.0, 2.0, 6.0, 10.0}, {0.2, 1.0, 0.4, 0.0}}, tau},
        {Saturated{1.0, 1.0}, tau},
        {Saturated{0.5, 2.0}, tau},
        {Saturated{1.0, 10.0}, tau},
    };
    std::size_t violations = 0;
    double worst_weight_error = 0.0;
    for (const IncidenceSpec& spec : kinds) {
        const DiscreteIncidence h(spec, dt);
        const AssumptionAConstants k = assumption_a_constants(spec);
        if (!h.weights().empty()) {
            const double sum = std::accumulate(h.weights().begin(), h.weights().end(), 0.0);
            worst_weight_error = std::max(worst_weight_error, std::abs(sum - 1.0));
            violations += std::any_of(h.weights().begin(), h.weights().end(), [](double w) { return w < 0.0; });
        }
        std::vector<double> phi(h.lag() + 1);
        std::vector<double> psi(h.lag() + 1);
        for (int trial = 0; trial < 10000; ++trial) {
            const double m = 0.01 + 10.0 * unit(rng);
            double norm_phi = 0.0;
            double norm_diff = 0.0;
            for (std::size_t j = 0; j < phi.size(); ++j) {
                phi[j] = m * std::max(unit(rng), 1e-9);
                psi[j] = m * unit(rng);
                norm_phi = std::max(norm_phi, phi[j]);
                norm_diff = std::max(norm_diff, std::abs(phi[j] - psi[j]));
            }
            const double a = h.evaluate(phi);
            const double b = h.evaluate(psi);
            violations += !(a > 0.0);
            violations += !(std::abs(a) <= k.c * (1.0 + norm_phi));
            violations += !(std::abs(a - b) <= k.lipschitz(m) * norm_diff + 1e-12);
        }
    }
    return {violations == 0 && worst_weight_error < 1e-12,
            std::to_string(kinds.size()) + " functionals x 10000 segments, " + std::to_string(violations) +
                " violations, max |sum w - 1| = " + fmt("%.1e", worst_weight_error)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Manifests differ only in their creation timestamp.
std::string manifest_without_time(const fs::path& p)
{
    auto doc = nlohmann::ordered_json::parse(slurp(p));
    doc.erase("created_utc");
    return doc.dump();
}

Outcome reproducibility()
{
    const fs::path root = fs::temp_directory_path() / "sddelab_acceptance_repro";
    fs::remove_all(root);
    const fs::path config = fs::path(SDDELAB_SOURCE_DIR) / "configs" / "reference-beta02.cfg";
    std::ostringstream log;

    cli::Overrides o;
    o.paths = 1000;
    o.seed = 3;
    o.t_end = 200.0;
    const std::array<unsigned, 3> workers{1, 2, 8};
    for (unsigned w : workers) {
        o.workers = w;
        cli::cmd_ensemble(config, o, root / ("ensemble_w" + std::to_string(w)), log);
    }
    for (int run = 0; run < 2; ++run) {
        cli::cmd_simulate(config, o, root / ("simulate_" + std::to_string(run)), log);
    }

    std::size_t files = 0;
    std::size_t mismatches = 0;
    const auto compare_dirs = [&](const fs::path& a, const fs::path& b) {
        for (const auto& entry : fs::directory_iterator(a)) {
            const std::string name = entry.path().filename().string();
            const std::string ext = entry.path().extension().string();
            if (ext != ".csv" && ext != ".json") {
                continue;
            }
            ++files;
            const bool same = name == "manifest.json"
                                  ? manifest_without_time(entry.path()) == manifest_without_time(b / name)
                                  : slurp(entry.path()) == slurp(b / name);
            mismatches += same ? 0 : 1;
        }
    };
    for (std::size_t k = 1; k < workers.size(); ++k) {
        compare_dirs(root / "ensemble_w1", root / ("ensemble_w" + std::to_string(workers[k])));
    }
    compare_dirs(root / "simulate_0", root / "simulate_1");
    fs::remove_all(root);
    return {mismatches == 0 && files > 0, std::to_string(files) + " CSV/JSON files compared across workers {1,2,8} " +
                                              "and repeated runs, " + std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"threshold reproduction", threshold_reproduction},
        {"endemic excess", endemic_excess},
        {"condition checkers", condition_checkers},
        {"sum exactness", sum_exactness},
        {"comparison mean", comparison_mean},
        {"deterministic limits", deterministic_limits},
        {"disease-free bound", bound_check},
        {"stationarity", stationarity},
        {"ergodicity cross-check", ergodicity},
        {"incidence properties", incidence_suite},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %-24s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
