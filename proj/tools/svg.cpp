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
#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sddelab::cli {

namespace {

constexpr int kLeft = 70;
constexpr int kRight = 150;
constexpr int kTop = 30;
constexpr int kBottom = 40;
constexpr int kTitle = 30;

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string px(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    void settle()
    {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
            const double pad = std::max(1e-3, 0.05 * std::abs(hi));
            lo -= pad;
            hi += pad;
        }
    }
};

// Roughly five ticks at 1, 2 or 5 times a power of ten.
std::vector<double> ticks(const Range& r)
{
    const double raw = (r.hi - r.lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    std::vector<double> out;
    for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

void draw_panel(std::ostringstream& svg, const Panel& panel, int y0, const SvgOptions& opt)
{
    Range xr;
    Range yr;
    for (const Series& s : panel.series) {
        for (double v : s.x) {
            xr.add(v);
        }
        for (double v : s.y) {
            yr.add(v);
        }
    }
    xr.settle();
    yr.settle();

    const double w = opt.panel_width - kLeft - kRight;
    const double h = opt.panel_height - kTop - kBottom;
    const double ox = kLeft;
    const double oy = y0 + kTop;
    const auto sx = [&](double x) { return ox + (x - xr.lo) / (xr.hi - xr.lo) * w; };
    const auto sy = [&](double y) { return oy + h - (y - yr.lo) / (yr.hi - yr.lo) * h; };

    svg << "<g class=\"panel\">\n";
    svg << "<text x=\"" << px(ox + w / 2) << "\" y=\"" << px(oy - 10)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(panel.title) << "</text>\n";
    svg << "<rect x=\"" << px(ox) << "\" y=\"" << px(oy) << "\" width=\"" << px(w) << "\" height=\"" << px(h)
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (double t : ticks(xr)) {
        svg << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(oy + h) << "\" x2=\"" << px(sx(t)) << "\" y2=\""
            << px(oy + h + 4) << "\" stroke=\"#333\"/>";
        svg << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(oy + h + 16)
            << "\" text-anchor=\"middle\" font-size=\"10\">" << num(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        svg << "<line x1=\"" << px(ox - 4) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(ox) << "\" y2=\""
            << px(sy(t)) << "\" stroke=\"#333\"/>";
        svg << "<text x=\"" << px(ox - 6) << "\" y=\"" << px(sy(t) + 3)
            << "\" text-anchor=\"end\" font-size=\"10\">" << num(t) << "</text>\n";
    }
    svg << "<text x=\"" << px(ox + w / 2) << "\" y=\"" << px(oy + h + 32)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(panel.x_label) << "</text>\n";
    svg << "<text x=\"" << px(ox - 50) << "\" y=\"" << px(oy + h / 2) << "\" text-anchor=\"middle\" font-size=\"11\""
        << " transform=\"rotate(-90 " << px(ox - 50) << ' ' << px(oy + h / 2) << ")\">" << escape(panel.y_label)
        << "</text>\n";

    for (std::size_t k = 0; k < panel.series.size(); ++k) {
        const Series& s = panel.series[k];
        const std::size_t n = std::min(s.x.size(), s.y.size());
        const std::size_t every = n > opt.max_points ? (n + opt.max_points - 1) / opt.max_points : 1;
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\"";
        if (s.dashed) {
            svg << " stroke-dasharray=\"6 4\"";
        }
        svg << " points=\"";
        for (std::size_t j = 0; j < n; j += every) {
            svg << px(sx(s.x[j])) << ',' << px(sy(s.y[j])) << ' ';
        }
        if (n > 0 && (n - 1) % every != 0) {
            svg << px(sx(s.x[n - 1])) << ',' << px(sy(s.y[n - 1]));
        }
        svg << "\"/>\n";

        const double ly = oy + 12 + 16 * static_cast<double>(k);
        const double lx = ox + w + 12;
        svg << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 24) << "\" y2=\"" << px(ly)
            << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>";
        svg << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(ly + 4) << "\" font-size=\"10\">" << escape(s.label)
            << "</text>\n";
    }
    svg << "</g>\n";
}

}  // namespace

std::string render_svg(const std::string& title, const std::vector<Panel>& panels, const SvgOptions& opt)
{
    const int width = opt.panel_width;
    const int height = kTitle + static_cast<int>(panels.size()) * opt.panel_height;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
    if (opt.timestamp) {
        svg << "<metadata>" << escape(*opt.timestamp) << "</metadata>\n";
    }
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
    for (std::size_t p = 0; p < panels.size(); ++p) {
        draw_panel(svg, panels[p], kTitle + static_cast<int>(p) * opt.panel_height, opt);
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sddelab::cli
