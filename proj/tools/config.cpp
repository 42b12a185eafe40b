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
#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sddelab/io.hpp"

namespace sddelab::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"model", {"lambda", "mu", "beta", "gamma", "delta", "eta", "sigma", "tau"}},
        {"incidence", {"kind", "rate", "alpha", "q", "table"}},
        {"simulation",
         {"dt", "t_end", "init_S", "init_I", "init_R", "history_table", "clamp_policy", "record_stride", "seed"}},
        {"ensemble", {"paths", "probes", "workers", "failure_budget", "functional"}},
    };
    return keys;
}

class Reader {
public:
    Reader(std::string source, std::map<std::string, Section> sections)
        : source_(std::move(source)), sections_(std::move(sections))
    {
    }

    const Entry* find(const std::string& section, const std::string& key) const
    {
        const auto s = sections_.find(section);
        if (s == sections_.end()) {
            return nullptr;
        }
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    double number(const std::string& section, const std::string& key) const
    {
        const Entry* e = find(section, key);
        if (e == nullptr) {
            throw ConfigParseError(source_, 0, key, "missing required key '" + key + "' in [" + section + "]");
        }
        return parse_double(*e, key);
    }

    double number(const std::string& section, const std::string& key, double fallback) const
    {
        const Entry* e = find(section, key);
        return e == nullptr ? fallback : parse_double(*e, key);
    }

    std::uint64_t integer(const std::string& section, const std::string& key, std::uint64_t fallback) const
    {
        const Entry* e = find(section, key);
        if (e == nullptr) {
            return fallback;
        }
        std::uint64_t v = 0;
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw ConfigParseError(source_, e->line, key, "expected a non-negative integer, got '" + e->value + "'");
        }
        return v;
    }

    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const
    {
        const Entry* e = find(section, key);
        return e == nullptr ? fallback : e->value;
    }

    int line_of(const std::string& section, const std::string& key) const
    {
        const Entry* e = find(section, key);
        return e == nullptr ? 0 : e->line;
    }

    const std::string& source() const noexcept { return source_; }

private:
    double parse_double(const Entry& e, const std::string& key) const
    {
        double v = 0.0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw ConfigParseError(source_, e.line, key, "expected a number, got '" + e.value + "'");
        }
        return v;
    }

    std::string source_;
    std::map<std::string, Section> sections_;
};

std::vector<HistoryPoint> load_history_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open history table '" + path.string() + "'");
    }
    std::vector<HistoryPoint> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::replace(line.begin(), line.end(), ',', ' ');
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        std::istringstream row(t);
        HistoryPoint p;
        std::string extra;
        if (!(row >> p.theta >> p.x.s >> p.x.i >> p.x.r) || (row >> extra)) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected four numeric columns 'theta S I R'");
        }
        rows.push_back(p);
    }
    return rows;
}

void put(std::ostringstream& out, const char* key, double v)
{
    out << key << " = " << format_double(v) << '\n';
}

}  // namespace

ConfigParseError::ConfigParseError(std::string source, int line, std::string field, const std::string& message)
    : ConfigError(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line),
      field_(std::move(field))
{
}

EnsembleConfig RunConfig::ensemble() const
{
    EnsembleConfig e;
    e.sim = sim;
    e.n_paths = paths;
    e.base_seed = seed;
    e.probe_times = probes;
    e.workers = workers;
    e.failure_budget = failure_budget;
    switch (functional) {
    case FunctionalMode::None:
        e.functional = TrackedFunctional::None;
        break;
    case FunctionalMode::DiseaseFree:
        e.functional = TrackedFunctional::DiseaseFreeDeviation;
        break;
    case FunctionalMode::Auto:
        e.functional = check_disease_free_conditions(sim.params).conditions.all()
                           ? TrackedFunctional::DiseaseFreeDeviation
                           : TrackedFunctional::None;
        break;
    }
    return e;
}

ClampPolicy parse_clamp_policy(const std::string& s)
{
    if (s == "clamp" || s == "clamp_to_zero") {
        return ClampPolicy::ClampToZero;
    }
    if (s == "fail" || s == "fail_on_negative") {
        return ClampPolicy::FailOnNegative;
    }
    throw ConfigError("clamp policy must be 'clamp' or 'fail', got '" + s + "'");
}

std::vector<double> parse_number_list(const std::string& s, const std::string& field)
{
    std::vector<double> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw ConfigError("'" + field + "' expects comma-separated numbers, got '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

RunConfig parse_config_text(const std::string& text, const std::string& source, const std::filesystem::path& base_dir)
{
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigParseError(source, lineno, line, "unterminated section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (!schema().contains(current)) {
                throw ConfigParseError(source, lineno, current, "unknown section [" + current + "]");
            }
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigParseError(source, lineno, line, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (current.empty()) {
            throw ConfigParseError(source, lineno, key, "key '" + key + "' appears before any section");
        }
        if (!schema().at(current).contains(key)) {
            throw ConfigParseError(source, lineno, key, "unknown key '" + key + "' in [" + current + "]");
        }
        if (value.empty()) {
            throw ConfigParseError(source, lineno, key, "empty value for '" + key + "'");
        }
        if (!sections[current].emplace(key, Entry{value, lineno}).second) {
            throw ConfigParseError(source, lineno, key, "duplicate key '" + key + "' in [" + current + "]");
        }
    }

    const Reader r(source, std::move(sections));
    RunConfig cfg;
    ModelParams& p = cfg.sim.params;
    p.lambda = r.number("model", "lambda");
    p.mu = r.number("model", "mu");
    p.beta = r.number("model", "beta");
    p.gamma = r.number("model", "gamma");
    p.delta = r.number("model", "delta");
    p.eta = r.number("model", "eta");
    p.sigma = r.number("model", "sigma");
    p.tau = r.number("model", "tau");

    const auto resolve = [&](const std::string& rel) {
        const std::filesystem::path path(rel);
        return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    };

    const std::string kind = r.text("incidence", "kind", "dirac");
    IncidenceSpec& inc = cfg.sim.incidence;
    inc.tau = p.tau;
    if (kind == "dirac") {
        inc.kind = DiracDelay{};
    } else if (kind == "uniform") {
        inc.kind = UniformKernel{};
    } else if (kind == "truncated_exponential") {
        inc.kind = TruncatedExponentialKernel{r.number("incidence", "rate")};
    } else if (kind == "saturated") {
        inc.kind = Saturated{r.number("incidence", "alpha"), r.number("incidence", "q", 1.0)};
    } else if (kind == "tabulated") {
        const std::string table = r.text("incidence", "table", "");
        if (table.empty()) {
            throw ConfigParseError(source, r.line_of("incidence", "kind"), "table",
                                   "missing required key 'table' in [incidence]");
        }
        inc.kind = load_kernel_table(resolve(table));
    } else {
        throw ConfigParseError(source, r.line_of("incidence", "kind"), "kind",
                               "unknown incidence kind '" + kind +
                                   "' (dirac, uniform, truncated_exponential, tabulated, saturated)");
    }

    SimConfig& sim = cfg.sim;
    sim.dt = r.number("simulation", "dt", 0.1);
    sim.t_end = r.number("simulation", "t_end", 300.0);
    const std::string history = r.text("simulation", "history_table", "");
    if (!history.empty()) {
        sim.initial_history = load_history_table(resolve(history));
    } else {
        sim.initial_history = State{r.number("simulation", "init_S", 0.7), r.number("simulation", "init_I", 0.3),
                                    r.number("simulation", "init_R", 0.0)};
    }
    try {
        sim.clamp_policy = parse_clamp_policy(r.text("simulation", "clamp_policy", "clamp"));
    } catch (const ConfigError& e) {
        throw ConfigParseError(source, r.line_of("simulation", "clamp_policy"), "clamp_policy", e.what());
    }
    sim.record_stride = r.integer("simulation", "record_stride", 1);
    cfg.seed = r.integer("simulation", "seed", 1);

    cfg.paths = r.integer("ensemble", "paths", 10000);
    cfg.workers = static_cast<unsigned>(r.integer("ensemble", "workers", 0));
    cfg.failure_budget = r.integer("ensemble", "failure_budget", 0);
    if (const Entry* e = r.find("ensemble", "probes")) {
        try {
            cfg.probes = parse_number_list(e->value, "probes");
        } catch (const ConfigError& err) {
            throw ConfigParseError(source, e->line, "probes", err.what());
        }
    }
    const std::string functional = r.text("ensemble", "functional", "auto");
    if (functional == "auto") {
        cfg.functional = FunctionalMode::Auto;
    } else if (functional == "none") {
        cfg.functional = FunctionalMode::None;
    } else if (functional == "disease_free") {
        cfg.functional = FunctionalMode::DiseaseFree;
    } else {
        throw ConfigParseError(source, r.line_of("ensemble", "functional"), "functional",
                               "functional must be auto, none or disease_free");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.string(), path.parent_path());
}

std::string canonical_text(const RunConfig& cfg)
{
    std::ostringstream out;
    const ModelParams& p = cfg.sim.params;
    out << "[model]\n";
    put(out, "beta", p.beta);
    put(out, "delta", p.delta);
    put(out, "eta", p.eta);
    put(out, "gamma", p.gamma);
    put(out, "lambda", p.lambda);
    put(out, "mu", p.mu);
    put(out, "sigma", p.sigma);
    put(out, "tau", p.tau);

    out << "[incidence]\nkind = " << cfg.sim.incidence.name() << '\n';
    const auto& kind = cfg.sim.incidence.kind;
    if (const auto* e = std::get_if<TruncatedExponentialKernel>(&kind)) {
        put(out, "rate", e->rate);
    } else if (const auto* s = std::get_if<Saturated>(&kind)) {
        put(out, "alpha", s->alpha);
        put(out, "q", s->q);
    } else if (const auto* t = std::get_if<TabulatedKernel>(&kind)) {
        for (std::size_t j = 0; j < t->s.size(); ++j) {
            out << "table = " << format_double(t->s[j]) << ' ' << format_double(t->f[j]) << '\n';
        }
    }

    const SimConfig& sim = cfg.sim;
    out << "[simulation]\n";
    out << "clamp_policy = " << (sim.clamp_policy == ClampPolicy::ClampToZero ? "clamp" : "fail") << '\n';
    put(out, "dt", sim.dt);
    if (const auto* c = std::get_if<State>(&sim.initial_history)) {
        put(out, "init_I", c->i);
        put(out, "init_R", c->r);
        put(out, "init_S", c->s);
    } else {
        for (const HistoryPoint& h : std::get<std::vector<HistoryPoint>>(sim.initial_history)) {
            out << "history = " << format_double(h.theta) << ' ' << format_double(h.x.s) << ' '
                << format_double(h.x.i) << ' ' << format_double(h.x.r) << '\n';
        }
    }
    out << "record_stride = " << sim.record_stride << '\n';
    out << "seed = " << cfg.seed << '\n';
    put(out, "t_end", sim.t_end);

    out << "[ensemble]\nfailure_budget = " << cfg.failure_budget << '\n';
    out << "functional = "
        << (cfg.functional == FunctionalMode::Auto ? "auto"
                                                    : cfg.functional == FunctionalMode::None ? "none" : "disease_free")
        << '\n';
    out << "paths = " << cfg.paths << "\nprobes =";
    for (double t : cfg.probes) {
        out << ' ' << format_double(t);
    }
    out << '\n';
    return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t x)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace sddelab::cli
