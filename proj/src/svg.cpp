// Copyright 2026 The netsir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netsir/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace netsir::svg
{
namespace
{
constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}
}  // namespace

std::string line_chart(const std::string& title, std::span<const double> t, std::span<const Series> series)
{
    double t_lo = t.empty() ? 0.0 : t.front();
    double t_hi = t.empty() ? 1.0 : t.back();
    if (t_hi <= t_lo) t_hi = t_lo + 1.0;
    double v_lo = 0.0;
    double v_hi = 0.0;
    for (const auto& s : series)
    {
        for (double v : s.values)
        {
            v_lo = std::min(v_lo, v);
            v_hi = std::max(v_hi, v);
        }
    }
    if (v_hi <= v_lo) v_hi = v_lo + 1.0;
    v_hi += 0.05 * (v_hi - v_lo);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double tv) { return kLeft + (tv - t_lo) / (t_hi - t_lo) * plot_w; };
    auto py = [&](double v) { return kTop + (1.0 - (v - v_lo) / (v_hi - v_lo)) * plot_h; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{3}</text>\n",
        kWidth, kHeight, kLeft, escape(title));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                       kTop, plot_w, plot_h);
    for (int k = 0; k <= 5; ++k)
    {
        const double tv = t_lo + (t_hi - t_lo) * k / 5.0;
        const double vv = v_lo + (v_hi - v_lo) * k / 5.0;
        out += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" "
            "text-anchor=\"middle\">{:.3g}</text>\n",
            px(tv), kHeight - kBottom + 16, tv);
        out += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" "
            "text-anchor=\"end\">{:.3g}</text>\n",
            kLeft - 6, py(vv) + 4, vv);
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\">t</text>\n",
                       kLeft + plot_w / 2, kHeight - 10);

    // thin very long series so the file stays small
    const std::size_t stride = std::max<std::size_t>(1, t.size() / 2000);
    for (std::size_t s = 0; s < series.size(); ++s)
    {
        const auto* color = kPalette[s % std::size(kPalette)];
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"", color);
        const auto& vals = series[s].values;
        const std::size_t m = std::min(vals.size(), t.size());
        for (std::size_t k = 0; k < m; k += stride)
        {
            out += fmt::format("{:.2f},{:.2f} ", px(t[k]), py(vals[k]));
        }
        if (m > 0 && (m - 1) % stride != 0) out += fmt::format("{:.2f},{:.2f}", px(t[m - 1]), py(vals[m - 1]));
        out += "\"/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
                           "stroke-width=\"2\"/>\n",
                           kWidth - kRight + 12, ly, kWidth - kRight + 36, color);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                           kWidth - kRight + 42, ly + 4, escape(series[s].label));
    }
    out += "</svg>\n";
    return out;
}
}  // namespace netsir::svg
