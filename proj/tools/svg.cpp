#include "svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace regaudit::cli {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string importance_svg(const std::string& title, const ImportanceReport& report) {
    const double label_w = 140, plot_w = 420, row_h = 28, top = 48, right = 30;
    const double height = top + row_h * static_cast<double>(report.rows.size()) + 40;
    const double width = label_w + plot_w + right;

    double hi = 0.0;
    for (const auto& r : report.rows) {
        hi = std::max(hi, r.share_upper);
    }
    const double x_max = std::max(0.1, std::ceil(hi * 10.0 + 1e-9) / 10.0);
    auto x = [&](double share) { return label_w + plot_w * share / x_max; };

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        width, height, width, height);
    s += fmt::format("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s += fmt::format("<text x=\"{:.1f}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n", width / 2,
                     escape(title));
    s += fmt::format("<text x=\"{:.1f}\" y=\"36\" text-anchor=\"middle\" fill=\"#555\">relative importance "
                     "(band p=1..2, notch p={:.2f})</text>\n",
                     width / 2, report.p_point);

    const double axis_y = top + row_h * static_cast<double>(report.rows.size()) + 4;
    const int ticks = static_cast<int>(std::lround(x_max * 10.0));
    for (int t = 0; t <= ticks; ++t) {
        const double v = t / 10.0;
        s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>\n", x(v),
                         top - 4, axis_y);
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.0f}%</text>\n", x(v), axis_y + 16,
                         v * 100.0);
    }

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        const double y = top + row_h * static_cast<double>(i);
        const std::string fill = r.negative_coefficient ? "#9ecae1" : "#fdae6b";
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", label_w - 8,
                         y + row_h / 2 + 4, escape(r.name));
        s += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\" "
                         "stroke=\"#333\"/>\n",
                         x(r.share_lower), y + 5, std::max(1.0, x(r.share_upper) - x(r.share_lower)), row_h - 10,
                         fill);
        s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\" "
                         "stroke-width=\"2\"/>\n",
                         x(r.share_point), y + 2, y + row_h - 2);
    }
    s += "</svg>\n";
    return s;
}

std::string density_svg(const std::string& title, const DensityCurve& curve) {
    const double left = 60, plot_w = 520, plot_h = 300, top = 40, bottom = 40;
    const double width = left + plot_w + 20, height = top + plot_h + bottom;
    const double x0 = curve.grid.front(), x1 = curve.grid.back();
    const double y1 = *std::max_element(curve.density.begin(), curve.density.end());
    auto px = [&](double v) { return left + plot_w * (v - x0) / (x1 - x0); };
    auto py = [&](double v) { return top + plot_h * (1.0 - (y1 > 0 ? v / y1 : 0.0)); };

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        width, height, width, height);
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += fmt::format("<text x=\"{:.1f}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{} (h={:.4g})</text>\n",
                     width / 2, escape(title), curve.bandwidth);
    s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#333\"/>\n", left,
                     top + plot_h, left + plot_w);
    for (int t = 0; t <= 4; ++t) {
        const double v = x0 + (x1 - x0) * t / 4.0;
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", px(v),
                         top + plot_h + 16, v);
    }
    s += "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        s += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(curve.grid[i]), py(curve.density[i]));
    }
    s += "\"/>\n</svg>\n";
    return s;
}

} // namespace regaudit::cli
