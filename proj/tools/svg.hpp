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

#include <optional>
#include <string>
#include <vector>

namespace sddelab::cli {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color = "#1f77b4";
    bool dashed = false;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

struct SvgOptions {
    int panel_width = 640;
    int panel_height = 220;
    /// Long series are thinned to at most this many points per polyline.
    std::size_t max_points = 2000;
    /// Written into <metadata> only when set, so output stays byte-stable.
    std::optional<std::string> timestamp;
};

/// Standalone SVG with the panels stacked vertically.
std::string render_svg(const std::string& title, const std::vector<Panel>& panels, const SvgOptions& opt = {});

}  // namespace sddelab::cli
