#include "municlust/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace municlust {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Scale {
    double lo = 0.0, hi = 1.0, out_lo = 0.0, out_hi = 1.0;
    double operator()(double v) const {
        const double span = hi - lo;
        const double t = span == 0.0 ? 0.5 : (v - lo) / span;
        return out_lo + t * (out_hi - out_lo);
    }
};

Scale fit_scale(const std::vector<double>& v, double out_lo, double out_hi) {
    Scale s;
    s.lo = *std::min_element(v.begin(), v.end());
    s.hi = *std::max_element(v.begin(), v.end());
    s.out_lo = out_lo;
    s.out_hi = out_hi;
    return s;
}

std::string header() {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    return out.str();
}

void axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label) {
    out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kHeight - kMargin) << "\" x2=\""
        << num(kWidth - kMargin) << "\" y2=\"" << num(kHeight - kMargin)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin) << "\" x2=\""
        << num(kMargin) << "\" y2=\"" << num(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 10)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"15\" y=\"" << num(kHeight / 2)
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 "
        << num(kHeight / 2) << ")\">" << y_label << "</text>\n";
}

}  // namespace

std::string svg_scatter(const std::vector<double>& x, const std::vector<double>& y,
                        const RegressionFit& line, const LowessFit& smooth,
                        const std::string& x_label, const std::string& y_label) {
    std::ostringstream out;
    out << header();
    axes(out, x_label, y_label);
    const Scale sx = fit_scale(x, kMargin, kWidth - kMargin);
    std::vector<double> yy(y);
    const Scale sy = fit_scale(yy, kHeight - kMargin, kMargin);

    for (std::size_t i = 0; i < x.size(); ++i)
        out << "<circle cx=\"" << num(sx(x[i])) << "\" cy=\"" << num(sy(y[i]))
            << "\" r=\"2\" fill=\"black\" fill-opacity=\"0.5\"/>\n";

    out << "<line class=\"ols\" x1=\"" << num(sx(sx.lo)) << "\" y1=\""
        << num(sy(line.intercept + line.slope * sx.lo)) << "\" x2=\"" << num(sx(sx.hi))
        << "\" y2=\"" << num(sy(line.intercept + line.slope * sx.hi))
        << "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";

    out << "<polyline class=\"lowess\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < smooth.x.size(); ++i)
        out << num(sx(smooth.x[i])) << ',' << num(sy(smooth.fitted[i])) << ' ';
    out << "\"/>\n</svg>\n";
    return out.str();
}

std::string svg_heatmap(const std::vector<double>& values, std::size_t n,
                        const std::vector<std::string>& labels, const std::string& title) {
    std::ostringstream out;
    out << header();
    out << "<text x=\"" << num(kWidth / 2)
        << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const double side = std::min(kWidth, kHeight) - 2 * kMargin - 20;
    const double cell = side / static_cast<double>(n);
    const double x0 = kMargin + 60, y0 = kMargin;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values[i * n + j];
            const double t = hi == lo ? 0.0 : (v - lo) / (hi - lo);
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            out << "<rect x=\"" << num(x0 + static_cast<double>(j) * cell) << "\" y=\""
                << num(y0 + static_cast<double>(i) * cell) << "\" width=\"" << num(cell)
                << "\" height=\"" << num(cell) << "\" fill=\"rgb(" << shade << ',' << shade
                << ",255)\"/>\n";
        }
        out << "<text x=\"" << num(x0 - 4) << "\" y=\""
            << num(y0 + (static_cast<double>(i) + 0.7) * cell)
            << "\" text-anchor=\"end\" font-size=\"8\">" << labels[i] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_dendrogram(const Dendrogram& dendrogram,
                           const std::vector<std::string>& leaf_labels) {
    const std::size_t n = dendrogram.leaf_count();
    // Leaf order from a traversal of the final merge tree.
    std::vector<double> node_x(2 * n - 1, -1.0);
    std::vector<double> node_h(2 * n - 1, 0.0);
    std::size_t next_slot = 0;
    std::function<void(int)> place = [&](int node) {
        if (node < static_cast<int>(n)) {
            node_x[static_cast<std::size_t>(node)] = static_cast<double>(next_slot++);
            return;
        }
        const Merge& m = dendrogram.merges[static_cast<std::size_t>(node) - n];
        place(m.left);
        place(m.right);
        node_x[static_cast<std::size_t>(node)] =
            (node_x[static_cast<std::size_t>(m.left)] +
             node_x[static_cast<std::size_t>(m.right)]) /
            2.0;
        node_h[static_cast<std::size_t>(node)] = m.height;
    };
    place(static_cast<int>(2 * n - 2));

    const double max_h = std::max(dendrogram.merges.back().height, 1e-300);
    auto px = [&](double slot) {
        return kMargin + slot / static_cast<double>(n - 1) * (kWidth - 2 * kMargin);
    };
    auto py = [&](double h) {
        return (kHeight - kMargin) - h / max_h * (kHeight - 2 * kMargin);
    };

    std::ostringstream out;
    out << header();
    for (std::size_t i = 0; i < n; ++i)
        out << "<text x=\"" << num(px(node_x[i])) << "\" y=\"" << num(kHeight - kMargin + 14)
            << "\" text-anchor=\"middle\" font-size=\"9\">" << leaf_labels[i] << "</text>\n";
    for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
        const Merge& m = dendrogram.merges[s];
        const double xl = px(node_x[static_cast<std::size_t>(m.left)]);
        const double xr = px(node_x[static_cast<std::size_t>(m.right)]);
        const double yl = py(node_h[static_cast<std::size_t>(m.left)]);
        const double yr = py(node_h[static_cast<std::size_t>(m.right)]);
        const double yh = py(m.height);
        out << "<polyline class=\"merge\" fill=\"none\" stroke=\"black\" points=\"" << num(xl)
            << ',' << num(yl) << ' ' << num(xl) << ',' << num(yh) << ' ' << num(xr) << ','
            << num(yh) << ' ' << num(xr) << ',' << num(yr) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_curves(const std::vector<int>& k_values,
                       const std::map<std::string, std::vector<double>>& series,
                       const std::string& title) {
    static const char* colors[] = {"red", "blue", "green", "purple", "orange"};
    std::ostringstream out;
    out << header();
    out << "<text x=\"" << num(kWidth / 2)
        << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    axes(out, "k", "value");

    std::vector<double> all;
    for (const auto& [name, v] : series) all.insert(all.end(), v.begin(), v.end());
    if (all.empty()) {
        out << "</svg>\n";
        return out.str();
    }
    std::vector<double> kx(k_values.begin(), k_values.end());
    const Scale sx = fit_scale(kx, kMargin, kWidth - kMargin);
    const Scale sy = fit_scale(all, kHeight - kMargin, kMargin);

    std::size_t ci = 0;
    for (const auto& [name, v] : series) {
        const char* color = colors[ci++ % 5];
        out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t i = 0; i < v.size() && i < kx.size(); ++i)
            out << num(sx(kx[i])) << ',' << num(sy(v[i])) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << num(kWidth - kMargin + 4) << "\" y=\""
            << num(30.0 + 14.0 * static_cast<double>(ci)) << "\" font-size=\"10\" fill=\""
            << color << "\">" << name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace municlust
