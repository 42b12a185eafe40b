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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sddelab {

/// Every sample has the same value, so no bandwidth can be chosen.
class DegenerateSampleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

inline constexpr std::size_t kDefaultKdeGrid = 512;

/// 0.9 min(sd, IQR / 1.34) n^(-1/5); falls back to sd when the IQR vanishes.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian kernel density on a uniform grid spanning the sample range
/// padded by four bandwidths on either side.
DensityEstimate gaussian_kde(std::span<const double> samples, std::optional<double> bandwidth = std::nullopt,
                             std::size_t grid_size = kDefaultKdeGrid);

/// Trapezoidal integral of the density over its grid.
double integrate(const DensityEstimate& d);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample critical value c(alpha) sqrt((n + m) / (n m)),
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

struct MeanInterval {
    double mean = 0.0;
    double half_width = 0.0;
};

/// Normal-approximation interval z((1 + level) / 2) sd / sqrt(n).
MeanInterval mean_ci(std::span<const double> samples, double level);

/// Equal-width bins on [lo, hi]; values equal to hi land in the last bin.
struct HistogramSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t bins = 32;
};

/// Normalized histogram with explicit under- and overflow mass.
struct Histogram {
    HistogramSpec spec;
    std::vector<double> mass;
    double underflow = 0.0;
    double overflow = 0.0;

    double total() const noexcept;
};

Histogram histogram(std::span<const double> samples, const HistogramSpec& spec);

/// Half the L1 distance between two histograms on the same bins.
double total_variation(const Histogram& a, const Histogram& b);

}  // namespace sddelab
