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
#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sddelab/io.hpp"
#include "sddelab/stats.hpp"
#include "svg.hpp"

namespace sddelab::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::array<Component, 3> kComponents{Component::S, Component::I, Component::R};
constexpr std::array<const char*, 3> kColors{"#1f77b4", "#d62728", "#2ca02c"};
constexpr double kStationarityAlpha = 1e-3;

std::string fmt(const char* spec, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string pass(bool ok)
{
    return ok ? "PASS" : "FAIL";
}

std::string triple(const State& x)
{
    return "(" + fmt("%.6g", x.s) + ", " + fmt("%.6g", x.i) + ", " + fmt("%.6g", x.r) + ")";
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content)
{
    const fs::path path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    f.close();
    if (!f) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
}

std::string read_file(const fs::path& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string probe_tag(double t)
{
    return fmt("%g", t);
}

double component_value(const State& x, Component c)
{
    switch (c) {
    case Component::S:
        return x.s;
    case Component::I:
        return x.i;
    case Component::R:
        break;
    }
    return x.r;
}

Series trajectory_series(const Trajectory& t, Component c, std::string label, const char* color, bool dashed)
{
    Series s;
    s.x = t.times;
    s.y.reserve(t.states.size());
    for (const State& x : t.states) {
        s.y.push_back(component_value(x, c));
    }
    s.label = std::move(label);
    s.color = color;
    s.dashed = dashed;
    return s;
}

void print_disease_free(std::ostream& out, const DiseaseFreeBoundReport& d)
{
    const auto& c = d.conditions;
    out << "  [disease-free] R0 < 1: " << pass(c.r0_below_one) << '\n';
    out << "  [disease-free] mu > gamma + delta + 3/2 (eta + sigma^2) = " << fmt("%.6g", d.first_threshold) << ": "
        << pass(c.mu_above_first) << '\n';
    out << "  [disease-free] mu > second threshold = " << fmt("%.6g", d.second_threshold) << ": "
        << pass(c.mu_above_second) << '\n';
    out << "  [disease-free] gamma + delta - eta - sigma^2 > 0: " << pass(c.gap_positive) << '\n';
    out << "  K = " << fmt("%.6g", d.k_const) << " (min of " << fmt("%.6g", d.k_first) << ", "
        << fmt("%.6g", d.k_second) << ")\n";
    out << "  c1 = " << fmt("%.6g", d.c1) << '\n';
    out << "  bound = " << (d.bound ? fmt("%.6g", *d.bound) : std::string("n/a (conditions fail)")) << '\n';
}

void print_ergodic(std::ostream& out, const ErgodicConditionReport& e, const EquilibriaReport& eq)
{
    out << "  [ergodic] R0 > 1: " << pass(e.r0_gt_one) << '\n';
    out << "  [ergodic] mu S* - eta R* > 0: " << pass(e.excess_positive)
        << (eq.excess ? " (excess = " + fmt("%.6g", *eq.excess) + ")" : std::string()) << '\n';
    out << "  [ergodic] sigma^2 <= mu / 2: " << pass(e.sigma_small) << '\n';
    if (e.m_tilde) {
        out << "  [ergodic] m~ > 0: " << pass(*e.m_tilde > 0.0) << '\n';
        out << "  m~ = " << fmt("%.6g", *e.m_tilde) << '\n';
        out << "  K~ = " << fmt("%.6g", *e.k_tilde) << '\n';
        out << "  sigma^2 K~ / m~ = " << fmt("%.6g", *e.region_radius_sq) << '\n';
    } else {
        out << "  m~, K~ = n/a\n";
    }
}

}  // namespace

void apply(const Overrides& o, RunConfig& cfg)
{
    if (o.seed) {
        cfg.seed = *o.seed;
    }
    if (o.dt) {
        cfg.sim.dt = *o.dt;
    }
    if (o.t_end) {
        cfg.sim.t_end = *o.t_end;
    }
    if (o.paths) {
        cfg.paths = *o.paths;
    }
    if (o.probes) {
        cfg.probes = *o.probes;
    }
    if (o.clamp_policy) {
        cfg.sim.clamp_policy = parse_clamp_policy(*o.clamp_policy);
    }
    if (o.stride) {
        cfg.sim.record_stride = *o.stride;
    }
    if (o.workers) {
        cfg.workers = *o.workers;
    }
}

Regime parse_regime(const std::string& s)
{
    if (s == "auto") {
        return Regime::Auto;
    }
    if (s == "disease-free") {
        return Regime::DiseaseFree;
    }
    if (s == "endemic") {
        return Regime::Endemic;
    }
    throw ConfigError("regime must be auto, disease-free or endemic, got '" + s + "'");
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& outputs)
{
    nlohmann::ordered_json doc;
    doc["tool"] = "sddelab";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    const std::string canon = canonical_text(cfg);
    doc["config_digest"] = hex64(fnv1a64(canon));
    doc["seed"] = cfg.seed;
    doc["created_utc"] = utc_now();
    doc["config"] = canon;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const std::string& name : outputs) {
        const std::string bytes = read_file(dir / name);
        files.push_back({{"file", name}, {"bytes", bytes.size()}, {"fnv1a64", hex64(fnv1a64(bytes))}});
    }
    doc["outputs"] = std::move(files);
    write_file(dir, "manifest.json", doc.dump(2) + "\n");
}

int cmd_check(const fs::path& config, Regime regime, const std::optional<fs::path>& out_dir, std::ostream& out)
{
    const RunConfig cfg = load_config(config);
    const ModelParams& p = cfg.sim.params;
    const EquilibriaReport eq = equilibria(p);
    const DiseaseFreeBoundReport df = check_disease_free_conditions(p);
    const ErgodicConditionReport erg = check_ergodic_conditions(p);

    if (regime == Regime::Auto) {
        regime = eq.r0 < 1.0 ? Regime::DiseaseFree : Regime::Endemic;
    }
    bool ok = false;
    if (regime == Regime::DiseaseFree) {
        ok = df.conditions.all();
        out << "R0=" << fmt("%.4g", eq.r0) << ", disease-free conditions: " << pass(ok)
            << ", bound=" << (df.bound ? fmt("%.3g", *df.bound) : std::string("n/a")) << '\n';
    } else {
        ok = erg.all();
        out << "R0=" << fmt("%.4g", eq.r0) << ", ergodic conditions: " << pass(ok)
            << ", excess=" << (eq.excess ? fmt("%.2g", *eq.excess) : std::string("n/a")) << '\n';
    }

    out << "  R0 = " << fmt("%.10g", eq.r0) << '\n';
    out << "  E0 = " << triple(eq.e0) << '\n';
    if (eq.e_star) {
        out << "  E* = " << triple(*eq.e_star) << ", N* = " << fmt("%.6g", *eq.n_star) << '\n';
    } else {
        out << "  E* = none (R0 <= 1)\n";
    }
    print_disease_free(out, df);
    print_ergodic(out, erg, eq);

    if (out_dir) {
        ensure_dir(*out_dir);
        std::ostringstream report;
        print_disease_free(report, df);
        print_ergodic(report, erg, eq);
        write_file(*out_dir, "check.txt", report.str());
        write_manifest(*out_dir, "check", cfg, {"check.txt"});
    }
    return ok ? kSuccess : kConditionFail;
}

int cmd_simulate(const fs::path& config, const Overrides& o, const fs::path& out_dir, std::ostream& out)
{
    RunConfig cfg = load_config(config);
    apply(o, cfg);
    cfg.sim.validate();

    const Trajectory path = simulate_path(cfg.sim, {cfg.seed, 0});
    const Trajectory det = simulate_path(cfg.sim.deterministic(), {cfg.seed, 0});

    ensure_dir(out_dir);
    std::ostringstream stochastic_csv;
    write_trajectory_csv(stochastic_csv, path);
    write_file(out_dir, "path.csv", stochastic_csv.str());
    std::ostringstream det_csv;
    write_trajectory_csv(det_csv, det);
    write_file(out_dir, "deterministic.csv", det_csv.str());

    std::vector<Panel> panels;
    for (std::size_t c = 0; c < 3; ++c) {
        const std::string name(component_name(kComponents[c]));
        Panel panel;
        panel.title = name + "(t)";
        panel.x_label = "t";
        panel.y_label = name;
        panel.series.push_back(trajectory_series(path, kComponents[c], name + " stochastic", kColors[c], false));
        panel.series.push_back(trajectory_series(det, kComponents[c], name + " deterministic", kColors[c], true));
        panels.push_back(std::move(panel));
    }
    const double r0 = basic_reproduction_number(cfg.sim.params);
    write_file(out_dir, "path.svg",
               render_svg("beta=" + fmt("%g", cfg.sim.params.beta) + ", sigma=" + fmt("%g", cfg.sim.params.sigma) +
                              ", R0=" + fmt("%.4g", r0),
                          panels));
    write_manifest(out_dir, "simulate", cfg, {"path.csv", "deterministic.csv", "path.svg"});

    out << "simulated " << path.steps << " steps to t=" << fmt("%g", cfg.sim.t_end) << " (seed " << cfg.seed << ")\n";
    out << "  final stochastic state    " << triple(path.states.back()) << '\n';
    out << "  final deterministic state " << triple(det.states.back()) << '\n';
    out << "  clamp rate " << fmt("%.3g", path.clamp_rate()) << (path.clamp_rate() > kClampRateWarning ? " (FLAGGED)" : "")
        << '\n';
    out << "  wrote " << (out_dir / "path.csv").string() << ", deterministic.csv, path.svg, manifest.json\n";
    return kSuccess;
}

int cmd_ensemble(const fs::path& config, const Overrides& o, const fs::path& out_dir, std::ostream& out)
{
    RunConfig cfg = load_config(config);
    apply(o, cfg);
    const EnsembleConfig ecfg = cfg.ensemble();
    ecfg.validate();

    const EnsembleSummary summary = run_ensemble(ecfg);
    ensure_dir(out_dir);
    std::vector<std::string> outputs;
    bool ok = true;

    out << "ensemble of " << summary.n_paths << " paths (" << summary.n_completed << " completed), seed " << cfg.seed
        << '\n';
    out << "  clamp rate " << fmt("%.3g", summary.clamp_rate) << (summary.clamp_flagged ? " (FLAGGED)" : "") << '\n';

    // Marginal samples and densities per probe.
    std::array<Panel, 3> panels;
    bool degenerate = false;
    for (std::size_t c = 0; c < 3; ++c) {
        const std::string name(component_name(kComponents[c]));
        panels[c].title = "density of " + name;
        panels[c].x_label = name;
        panels[c].y_label = "density";
    }
    static constexpr std::array<const char*, 6> kProbeColors{"#1f77b4", "#ff7f0e", "#2ca02c",
                                                             "#d62728", "#9467bd", "#8c564b"};
    for (std::size_t p = 0; p < summary.probes.size(); ++p) {
        const ProbeSamples& probe = summary.probes[p];
        const std::string tag = probe_tag(probe.time);
        std::ostringstream csv;
        write_probe_csv(csv, probe);
        const std::string marginal = "marginal_t" + tag + ".csv";
        write_file(out_dir, marginal, csv.str());
        outputs.push_back(marginal);

        for (std::size_t c = 0; c < 3; ++c) {
            const std::string name(component_name(kComponents[c]));
            const auto& samples = probe.component(kComponents[c]);
            try {
                const DensityEstimate d = gaussian_kde(samples);
                std::ostringstream dcsv;
                write_density_csv(dcsv, d);
                const std::string file = "density_" + name + "_t" + tag + ".csv";
                write_file(out_dir, file, dcsv.str());
                outputs.push_back(file);
                Series s;
                s.x = d.grid;
                s.y = d.density;
                s.label = "t=" + tag;
                s.color = kProbeColors[p % kProbeColors.size()];
                s.dashed = p >= kProbeColors.size();
                panels[c].series.push_back(std::move(s));
            } catch (const std::invalid_argument& e) {
                degenerate = true;
                out << "  degenerate sample for " << name << " at t=" << tag << ": " << e.what() << '\n';
            }
        }
    }
    if (!degenerate && !summary.probes.empty()) {
        for (std::size_t c = 0; c < 3; ++c) {
            const std::string name(component_name(kComponents[c]));
            const std::string file = "density_" + name + ".svg";
            write_file(out_dir, file, render_svg("Density of " + name + " at probe times", {panels[c]}));
            outputs.push_back(file);
        }
    }

    // Pairwise KS distances between probe marginals.
    std::vector<KsRecord> ks;
    if (summary.probes.size() >= 2) {
        const std::size_t n = summary.probes.front().s.size();
        const double threshold = ks_critical_value(n, n, kStationarityAlpha);
        bool stationary = true;
        for (Component c : kComponents) {
            for (std::size_t a = 0; a < summary.probes.size(); ++a) {
                for (std::size_t b = a + 1; b < summary.probes.size(); ++b) {
                    const double d =
                        ks_distance(summary.probes[a].component(c), summary.probes[b].component(c));
                    ks.push_back({c, summary.probes[a].time, summary.probes[b].time, d});
                    stationary = stationary && d < threshold;
                    out << "  KS " << component_name(c) << " t=" << probe_tag(summary.probes[a].time)
                        << " vs t=" << probe_tag(summary.probes[b].time) << ": " << fmt("%.4f", d) << '\n';
                }
            }
        }
        if (degenerate || n < 2) {
            out << "  stationarity: n/a (degenerate sample)\n";
        } else {
            out << "  stationarity (all KS < " << fmt("%.4f", threshold) << "): " << pass(stationary) << '\n';
            ok = ok && stationary;
        }
    }

    if (summary.time_average_estimate) {
        const DiseaseFreeBoundReport df = check_disease_free_conditions(cfg.sim.params);
        out << "  time-average estimate " << fmt("%.6g", *summary.time_average_estimate) << " (last 10%: "
            << fmt("%.6g", *summary.time_average_tail) << ")";
        if (df.bound) {
            const bool within = *summary.time_average_estimate <= *df.bound;
            out << ", bound " << fmt("%.6g", *df.bound) << ": " << pass(within) << '\n';
            ok = ok && within;
        } else {
            out << ", bound n/a (disease-free conditions fail)\n";
        }
    }

    write_file(out_dir, "summary.json", summary_json(summary, ks));
    outputs.insert(outputs.begin(), "summary.json");
    write_manifest(out_dir, "ensemble", cfg, outputs);
    out << "  wrote " << outputs.size() << " files and manifest.json to " << out_dir.string() << '\n';
    return ok ? kSuccess : kConditionFail;
}

int guarded(const std::function<int()>& body, std::ostream& err)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const std::exception& e) {
        err << "runtime failure: " << e.what() << '\n';
        return kRuntimeFailure;
    }
}

}  // namespace sddelab::cli
