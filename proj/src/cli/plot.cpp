// Copyright 2026 The qlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlan/cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace qlan::cli {

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 480;
constexpr double kLeft = 90;
constexpr double kRight = 220;
constexpr double kTop = 50;
constexpr double kBottom = 60;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
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

std::string series_label(const ReportRow &r) {
    std::string label;
    if (r.mu) {
        label += "mu=" + tick_label(*r.mu);
    }
    if (r.u) {
        label += (label.empty() ? "" : " ") + std::string("u=(") + tick_label(r.u->x) + "," + tick_label(r.u->y) + ")";
    }
    return label.empty() ? "all" : label;
}

}  // namespace

std::string emit_plot(const RiskReport &report, const std::string &statistic) {
    std::string stat = statistic;
    if (stat.empty()) {
        std::map<std::string, int> counts;
        for (const ReportRow &r : report.rows) {
            if (r.n && ++counts[r.statistic] >= 2) {
                stat = r.statistic;
                break;
            }
        }
    }
    std::vector<const ReportRow *> rows;
    for (const ReportRow &r : report.rows) {
        if (r.n && r.statistic == stat && std::isfinite(r.value)) {
            rows.push_back(&r);
        }
    }
    if (rows.size() < 2) {
        throw SelectionError(stat.empty() ? "report has no statistic with two or more rows carrying n"
                                          : "statistic '" + stat + "' has fewer than two rows carrying n");
    }

    // Series in order of first appearance.
    std::vector<std::string> labels;
    std::map<std::string, std::vector<std::pair<int, double>>> series;
    for (const ReportRow *r : rows) {
        std::string label = series_label(*r);
        if (!series.count(label)) {
            labels.push_back(label);
        }
        series[label].emplace_back(*r->n, r->value);
    }
    std::set<int> ns;
    double ymin = rows.front()->value;
    double ymax = ymin;
    for (const ReportRow *r : rows) {
        ns.insert(*r->n);
        ymin = std::min(ymin, r->value);
        ymax = std::max(ymax, r->value);
    }
    if (ymax == ymin) {
        double pad = ymin == 0 ? 1 : std::abs(ymin) * 0.1;
        ymin -= pad;
        ymax += pad;
    } else {
        double pad = (ymax - ymin) * 0.05;
        ymin -= pad;
        ymax += pad;
    }
    double xmin = std::log10(static_cast<double>(*ns.begin()));
    double xmax = std::log10(static_cast<double>(*ns.rbegin()));
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    double plot_w = kWidth - kLeft - kRight;
    double plot_h = kHeight - kTop - kBottom;
    auto px = [&](int n) { return kLeft + (std::log10(static_cast<double>(n)) - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop - 20) << "\" font-size=\"14\">"
        << xml_escape(report.command + ": " + stat) << "</text>\n";
    svg << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(plot_w)
        << "\" height=\"" << fixed(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int n : ns) {
        double x = px(n);
        svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(x)
            << "\" y2=\"" << fixed(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kTop + plot_h + 20) << "\" text-anchor=\"middle\">" << n
            << "</text>\n";
    }
    for (int k = 0; k <= 4; k++) {
        double v = ymin + (ymax - ymin) * k / 4;
        double y = py(v);
        svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft)
            << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
            << tick_label(v) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
        << "\" text-anchor=\"middle\">n (log scale)</text>\n";
    for (std::size_t s = 0; s < labels.size(); s++) {
        std::vector<std::pair<int, double>> pts = series[labels[s]];
        std::stable_sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        const char *color = kPalette[s % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); i++) {
            svg << (i ? " " : "") << fixed(px(pts[i].first)) << "," << fixed(py(pts[i].second));
        }
        svg << "\"/>\n";
        for (const auto &[n, v] : pts) {
            svg << "<circle cx=\"" << fixed(px(n)) << "\" cy=\"" << fixed(py(v)) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }
        double ly = kTop + 10 + 18 * static_cast<double>(s);
        double lx = kWidth - kRight + 15;
        svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 20) << "\" y2=\""
            << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << fixed(lx + 26) << "\" y=\"" << fixed(ly + 4) << "\">" << xml_escape(labels[s])
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qlan::cli
