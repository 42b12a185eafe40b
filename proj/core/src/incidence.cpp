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
#include "sddelab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sddelab/error.hpp"

namespace sddelab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double interpolate(const TabulatedKernel& table, double s)
{
    if (s < table.s.front() || s > table.s.back()) {
        return 0.0;
    }
    const auto hi = std::upper_bound(table.s.begin(), table.s.end(), s);
    if (hi == table.s.end()) {
        return table.f.back();
    }
    const auto k = static_cast<std::size_t>(hi - table.s.begin());
    const double s0 = table.s[k - 1];
    const double s1 = table.s[k];
    const double w = (s - s0) / (s1 - s0);
    return (1.0 - w) * table.f[k - 1] + w * table.f[k];
}

// Kernel density before normalization.
double kernel_value(const IncidenceKind& kind, double s)
{
    return std::visit(overloaded{[](const UniformKernel&) { return 1.0; },
                                 [s](const TruncatedExponentialKernel& k) { return k.rate * std::exp(-k.rate * s); },
                                 [s](const TabulatedKernel& k) { return interpolate(k, s); },
                                 [](const auto&) { return 0.0; }},
                      kind);
}

double saturate(double x, double alpha, double q)
{
    return x / (1.0 + alpha * std::pow(std::abs(x), q));
}

}  // namespace

std::size_t grid_lag(double tau, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("step dt must be finite and > 0");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ConfigError("delay tau must be finite and >= 0");
    }
    const double ratio = tau / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("delay tau = " + std::to_string(tau) + " is not an integer multiple of dt = " +
                          std::to_string(dt));
    }
    return static_cast<std::size_t>(rounded);
}

void IncidenceSpec::validate() const
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ConfigError("incidence tau must be finite and >= 0");
    }
    std::visit(overloaded{[](const TruncatedExponentialKernel& k) {
                              if (!(k.rate > 0.0) || !std::isfinite(k.rate)) {
                                  throw ConfigError("truncated exponential kernel requires rate > 0");
                              }
                          },
                          [](const TabulatedKernel& k) {
                              if (k.s.size() < 2 || k.s.size() != k.f.size()) {
                                  throw ConfigError("tabulated kernel needs at least two (s, f) rows");
                              }
                              for (std::size_t j = 0; j < k.s.size(); ++j) {
                                  if (!std::isfinite(k.s[j]) || !std::isfinite(k.f[j]) || k.f[j] < 0.0) {
                                      throw ConfigError("tabulated kernel values must be finite and f >= 0");
                                  }
                                  if (j > 0 && !(k.s[j] > k.s[j - 1])) {
                                      throw ConfigError("tabulated kernel abscissae must be strictly increasing");
                                  }
                              }
                              if (std::none_of(k.f.begin(), k.f.end(), [](double v) { return v > 0.0; })) {
                                  throw ConfigError("tabulated kernel has no positive mass");
                              }
                          },
                          [](const Saturated& k) {
                              if (!(k.alpha >= 0.0) || !std::isfinite(k.alpha)) {
                                  throw ConfigError("saturated incidence requires alpha >= 0");
                              }
                              if (!(k.q >= 1.0) || !std::isfinite(k.q)) {
                                  throw ConfigError("saturated incidence requires q >= 1");
                              }
                          },
                          [](const auto&) {}},
               kind);
}

bool IncidenceSpec::is_kernel() const noexcept
{
    return std::holds_alternative<UniformKernel>(kind) || std::holds_alternative<TruncatedExponentialKernel>(kind) ||
           std::holds_alternative<TabulatedKernel>(kind);
}

std::string IncidenceSpec::name() const
{
    return std::visit(overloaded{[](const DiracDelay&) { return std::string("dirac"); },
                                 [](const UniformKernel&) { return std::string("uniform"); },
                                 [](const TruncatedExponentialKernel&) { return std::string("truncated_exponential"); },
                                 [](const TabulatedKernel&) { return std::string("tabulated"); },
                                 [](const Saturated&) { return std::string("saturated"); }},
                      kind);
}

TabulatedKernel load_kernel_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open kernel table '" + path.string() + "'");
    }
    TabulatedKernel table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::replace(line.begin(), line.end(), ',', ' ');
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream row(line);
        double s = 0.0;
        double f = 0.0;
        std::string extra;
        if (!(row >> s >> f) || (row >> extra)) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected two numeric columns 's f'");
        }
        table.s.push_back(s);
        table.f.push_back(f);
    }
    return table;
}

DiscreteIncidence::DiscreteIncidence(IncidenceSpec spec, double dt)
    : spec_(std::move(spec)), dt_(dt), lag_(0), mode_(Mode::Endpoint)
{
    spec_.validate();
    lag_ = grid_lag(spec_.tau, dt_);

    if (const auto* sat = std::get_if<Saturated>(&spec_.kind)) {
        mode_ = Mode::Saturated;
        alpha_ = sat->alpha;
        q_ = sat->q;
        return;
    }
    if (!spec_.is_kernel()) {
        return;
    }
    mode_ = Mode::Kernel;
    weights_.assign(lag_ + 1, 0.0);
    if (lag_ == 0) {
        weights_[0] = 1.0;
        return;
    }
    // Node s_j = j dt sits at segment position lag - j.
    for (std::size_t j = 0; j < lag_; ++j) {
        weights_[lag_ - j] = kernel_value(spec_.kind, static_cast<double>(j) * dt_);
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw ConfigError("incidence kernel has no mass on the integration grid");
    }
    for (double& w : weights_) {
        w /= total;
    }
}

double DiscreteIncidence::evaluate(std::span<const double> values) const
{
    if (values.size() != lag_ + 1) {
        throw ConfigError("history segment has " + std::to_string(values.size()) + " values, expected " +
                          std::to_string(lag_ + 1));
    }
    switch (mode_) {
    case Mode::Endpoint:
        return values.front();
    case Mode::Saturated:
        return saturate(values.front(), alpha_, q_);
    case Mode::Kernel:
        break;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        acc += weights_[k] * values[k];
    }
    return acc;
}

double DiscreteIncidence::evaluate(const HistorySegment& segment) const
{
    if (std::abs(segment.dt - dt_) > 1e-12 * dt_) {
        throw ConfigError("history segment spacing does not match the integration grid");
    }
    return evaluate(segment.values);
}

double evaluate_incidence(const IncidenceSpec& spec, const HistorySegment& segment)
{
    return DiscreteIncidence(spec, segment.dt).evaluate(segment);
}

AssumptionAConstants assumption_a_constants(const IncidenceSpec& spec)
{
    spec.validate();
    AssumptionAConstants out;
    out.c = 1.0;
    if (const auto* sat = std::get_if<Saturated>(&spec.kind)) {
        // g(x) = x / (1 + a x^q); with y = a x^q, g'(x) = (1 + (1-q) y) / (1+y)^2,
        // which decreases in y up to y* = (q+1)/(q-1) and increases afterwards.
        const double alpha = sat->alpha;
        const double q = sat->q;
        out.lipschitz = [alpha, q](double m) {
            if (alpha == 0.0 || q == 1.0 || m <= 0.0) {
                return 1.0;
            }
            const double y_turn = (q + 1.0) / (q - 1.0);
            const double y = std::min(alpha * std::pow(m, q), y_turn);
            const double slope = (1.0 + (1.0 - q) * y) / ((1.0 + y) * (1.0 + y));
            return std::max(1.0, -slope);
        };
    } else {
        out.lipschitz = [](double) { return 1.0; };
    }
    return out;
}

}  // namespace sddelab
