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
#include "sddelab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "sddelab/error.hpp"
#include "sddelab/running_stats.hpp"

namespace sddelab {

namespace {

void require_finite(std::span<const double> samples, const char* what)
{
    for (double x : samples) {
        if (!std::isfinite(x)) {
            throw ConfigError(std::string(what) + ": samples must be finite");
        }
    }
}

// Linear-interpolation quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double p)
{
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double w = pos - static_cast<double>(k);
    return (1.0 - w) * sorted[k] + w * sorted[k + 1];
}

double sample_sd(std::span<const double> samples)
{
    RunningStats acc;
    for (double x : samples) {
        acc.push(x);
    }
    return std::sqrt(acc.sample_variance());
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples)
{
    if (samples.size() < 2) {
        throw ConfigError("bandwidth selection needs at least two samples");
    }
    require_finite(samples, "bandwidth selection");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) {
        throw DegenerateSampleError("all " + std::to_string(samples.size()) +
                                    " samples are identical; density bandwidth would be zero");
    }
    const double sd = sample_sd(samples);
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
}

DensityEstimate gaussian_kde(std::span<const double> samples, std::optional<double> bandwidth, std::size_t grid_size)
{
    if (samples.size() < 2) {
        throw ConfigError("density estimation needs at least two samples");
    }
    if (grid_size < 2) {
        throw ConfigError("density grid needs at least two points");
    }
    require_finite(samples, "density estimation");
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    if (*lo_it == *hi_it) {
        throw DegenerateSampleError("all " + std::to_string(samples.size()) +
                                    " samples are identical; density bandwidth would be zero");
    }

    DensityEstimate out;
    out.bandwidth = bandwidth ? *bandwidth : silverman_bandwidth(samples);
    if (!(out.bandwidth > 0.0) || !std::isfinite(out.bandwidth)) {
        throw ConfigError("density bandwidth must be finite and > 0");
    }
    const double h = out.bandwidth;
    const double lo = *lo_it - 4.0 * h;
    const double hi = *hi_it + 4.0 * h;
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);
    const double norm = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));

    out.grid.resize(grid_size);
    out.density.assign(grid_size, 0.0);
    for (std::size_t g = 0; g < grid_size; ++g) {
        out.grid[g] = lo + static_cast<double>(g) * step;
    }
    for (std::size_t g = 0; g < grid_size; ++g) {
        const double x = out.grid[g];
        double acc = 0.0;
        for (double xi : samples) {
            const double z = (x - xi) / h;
            acc += std::exp(-0.5 * z * z);
        }
        out.density[g] = acc * norm;
    }
    return out;
}

double integrate(const DensityEstimate& d)
{
    double acc = 0.0;
    for (std::size_t g = 1; g < d.grid.size(); ++g) {
        acc += 0.5 * (d.density[g] + d.density[g - 1]) * (d.grid[g] - d.grid[g - 1]);
    }
    return acc;
}

double ks_distance(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) {
        throw ConfigError("KS distance needs two non-empty samples");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());

    std::size_t i = 0;
    std::size_t j = 0;
    double best = 0.0;
    while (i < x.size() && j < y.size()) {
        // Step past every copy of the smallest remaining value before comparing.
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) {
            ++i;
        }
        while (j < y.size() && y[j] == v) {
            ++j;
        }
        best = std::max(best, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return best;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha)
{
    if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("KS critical value needs n, m > 0 and alpha in (0, 1)");
    }
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    return c * std::sqrt((nd + md) / (nd * md));
}

MeanInterval mean_ci(std::span<const double> samples, double level)
{
    if (samples.size() < 2) {
        throw ConfigError("confidence interval needs at least two samples");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw ConfigError("confidence level must lie in (0, 1)");
    }
    RunningStats acc;
    for (double x : samples) {
        acc.push(x);
    }
    const boost::math::normal_distribution<double> normal;
    const double z = boost::math::quantile(normal, 0.5 * (1.0 + level));
    return {acc.mean(), z * std::sqrt(acc.sample_variance() / static_cast<double>(acc.count()))};
}

double Histogram::total() const noexcept
{
    double acc = underflow + overflow;
    for (double m : mass) {
        acc += m;
    }
    return acc;
}

Histogram histogram(std::span<const double> samples, const HistogramSpec& spec)
{
    if (spec.bins == 0 || !(spec.hi > spec.lo)) {
        throw ConfigError("histogram needs bins >= 1 and hi > lo");
    }
    if (samples.empty()) {
        throw ConfigError("histogram of an empty sample");
    }
    std::vector<std::size_t> counts(spec.bins, 0);
    std::size_t under = 0;
    std::size_t over = 0;
    const double width = (spec.hi - spec.lo) / static_cast<double>(spec.bins);
    for (double x : samples) {
        if (x < spec.lo) {
            ++under;
        } else if (x > spec.hi) {
            ++over;
        } else {
            ++counts[std::min(static_cast<std::size_t>((x - spec.lo) / width), spec.bins - 1)];
        }
    }
    const double n = static_cast<double>(samples.size());
    Histogram h;
    h.spec = spec;
    h.mass.resize(spec.bins);
    std::transform(counts.begin(), counts.end(), h.mass.begin(), [n](std::size_t c) { return static_cast<double>(c) / n; });
    h.underflow = static_cast<double>(under) / n;
    h.overflow = static_cast<double>(over) / n;
    return h;
}

double total_variation(const Histogram& a, const Histogram& b)
{
    if (a.spec.bins != b.spec.bins || a.spec.lo != b.spec.lo || a.spec.hi != b.spec.hi) {
        throw ConfigError("total variation needs histograms on identical bins");
    }
    double acc = std::abs(a.underflow - b.underflow) + std::abs(a.overflow - b.overflow);
    for (std::size_t k = 0; k < a.mass.size(); ++k) {
        acc += std::abs(a.mass[k] - b.mass[k]);
    }
    return 0.5 * acc;
}

}  // namespace sddelab
