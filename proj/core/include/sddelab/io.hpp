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

#include <ostream>
#include <string>
#include <vector>

#include "sddelab/ensemble.hpp"
#include "sddelab/engine.hpp"
#include "sddelab/stats.hpp"

namespace sddelab {

/// Shortest form that round-trips: "%.17g".
std::string format_double(double x);

/// Header `t,S,I,R`.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);
/// Header `t,<column>`, `t,N` by default.
void write_scalar_csv(std::ostream& out, const ScalarTrajectory& t, const std::string& column = "N");
/// Header `x,density`.
void write_density_csv(std::ostream& out, const DensityEstimate& d);
/// Header `path,S,I,R`; one row per completed path.
void write_probe_csv(std::ostream& out, const ProbeSamples& p);

struct KsRecord {
    Component component = Component::S;
    double t_a = 0.0;
    double t_b = 0.0;
    double statistic = 0.0;
};

/// EnsembleSummary as a JSON document: per-time moments, per-probe summary
/// statistics, time-average estimates, clamp rate and optional KS records.
std::string summary_json(const EnsembleSummary& s, const std::vector<KsRecord>& ks = {});

}  // namespace sddelab
