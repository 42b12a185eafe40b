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
#include "sddelab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

namespace sddelab {

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t)
{
    out << "t,S,I,R\n";
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        const State& x = t.states[k];
        out << format_double(t.times[k]) << ',' << format_double(x.s) << ',' << format_double(x.i) << ','
            << format_double(x.r) << '\n';
    }
}

void write_scalar_csv(std::ostream& out, const ScalarTrajectory& t, const std::string& column)
{
    out << "t," << column << '\n';
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        out << format_double(t.times[k]) << ',' << format_double(t.values[k]) << '\n';
    }
}

void write_density_csv(std::ostream& out, const DensityEstimate& d)
{
    out << "x,density\n";
    for (std::size_t k = 0; k < d.grid.size(); ++k) {
        out << format_double(d.grid[k]) << ',' << format_double(d.density[k]) << '\n';
    }
}

void write_probe_csv(std::ostream& out, const ProbeSamples& p)
{
    out << "path,S,I,R\n";
    for (std::size_t k = 0; k < p.s.size(); ++k) {
        out << k << ',' << format_double(p.s[k]) << ',' << format_double(p.i[k]) << ',' << format_double(p.r[k])
            << '\n';
    }
}

namespace {

nlohmann::ordered_json sample_summary(const std::vector<double>& v)
{
    nlohmann::ordered_json j;
    j["n"] = v.size();
    if (v.size() >= 2) {
        const MeanInterval ci = mean_ci(v, 0.95);
        j["mean"] = ci.mean;
        j["ci95_half_width"] = ci.half_width;
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        j["min"] = *lo;
        j["max"] = *hi;
    } else if (v.size() == 1) {
        j["mean"] = v.front();
    }
    return j;
}

}  // namespace

std::string summary_json(const EnsembleSummary& s, const std::vector<KsRecord>& ks)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["n_paths"] = s.n_paths;
    doc["n_completed"] = s.n_completed;
    doc["clamp_rate"] = s.clamp_rate;
    doc["clamp_flagged"] = s.clamp_flagged;
    if (s.time_average_estimate) {
        doc["time_average_estimate"] = *s.time_average_estimate;
        doc["time_average_tail"] = *s.time_average_tail;
    }

    ordered_json probes = ordered_json::array();
    for (const ProbeSamples& p : s.probes) {
        ordered_json jp;
        jp["t"] = p.time;
        jp["S"] = sample_summary(p.s);
        jp["I"] = sample_summary(p.i);
        jp["R"] = sample_summary(p.r);
        probes.push_back(std::move(jp));
    }
    doc["probes"] = std::move(probes);

    if (!ks.empty()) {
        ordered_json jk = ordered_json::array();
        for (const KsRecord& r : ks) {
            jk.push_back({{"component", std::string(component_name(r.component))},
                          {"t_a", r.t_a},
                          {"t_b", r.t_b},
                          {"statistic", r.statistic}});
        }
        doc["ks"] = std::move(jk);
    }

    ordered_json failures = ordered_json::array();
    for (const PathFailure& f : s.failures) {
        failures.push_back({{"path", f.path}, {"message", f.message}});
    }
    doc["failures"] = std::move(failures);

    ordered_json moments;
    moments["t"] = s.times;
    std::vector<double> col(s.times.size());
    const auto column = [&](auto get) {
        for (std::size_t k = 0; k < col.size(); ++k) {
            col[k] = get(k);
        }
        return col;
    };
    moments["mean_S"] = column([&](std::size_t k) { return s.mean[k].s; });
    moments["mean_I"] = column([&](std::size_t k) { return s.mean[k].i; });
    moments["mean_R"] = column([&](std::size_t k) { return s.mean[k].r; });
    moments["var_S"] = column([&](std::size_t k) { return s.variance[k].s; });
    moments["var_I"] = column([&](std::size_t k) { return s.variance[k].i; });
    moments["var_R"] = column([&](std::size_t k) { return s.variance[k].r; });
    if (!s.functional_mean.empty()) {
        moments["mean_functional"] = s.functional_mean;
    }
    doc["moments"] = std::move(moments);
    return doc.dump(2) + "\n";
}

}  // namespace sddelab
