#include "municlust/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace municlust {

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("spearman: length mismatch");
    if (x.size() < 2) throw InvalidInput("spearman: need at least 2 observations");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double kendall(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("kendall: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw InvalidInput("kendall: need at least 2 observations");
    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0)
                ++ties_x;
            else if (dy == 0.0)
                ++ties_y;
            else if (dx * dy > 0.0)
                ++concordant;
            else
                ++discordant;
        }
    const double nx = static_cast<double>(concordant + discordant + ties_x);
    const double ny = static_cast<double>(concordant + discordant + ties_y);
    if (nx == 0.0 || ny == 0.0)
        throw NumericError("kendall: tau undefined for all-tied input");
    return static_cast<double>(concordant - discordant) / std::sqrt(nx * ny);
}

std::string strength_name(Strength s) {
    switch (s) {
        case Strength::Weak: return "weak";
        case Strength::Moderate: return "moderate";
        case Strength::Strong: return "strong";
        case Strength::VeryStrong: return "very strong";
    }
    return "unknown";
}

Strength strength_label(double r) {
    const double a = std::abs(r);
    if (a > 1.0) throw InvalidInput("strength_label: coefficient outside [-1, 1]");
    if (a >= 0.9) return Strength::VeryStrong;
    if (a >= 0.7) return Strength::Strong;
    if (a >= 0.4) return Strength::Moderate;
    return Strength::Weak;
}

RegressionFit linear_regression(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("linear_regression: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw InvalidInput("linear_regression: need at least 2 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw NumericError("linear_regression: constant x");
    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 0.0 : (sxy * sxy) / (sxx * syy);
    if (fit.r_squared > 1.0) fit.r_squared = 1.0;
    return fit;
}

namespace {

// Weighted least squares of one local line, evaluated at x0.
double local_fit(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w, std::size_t lo, std::size_t hi, double x0) {
    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    if (sw <= 0.0) throw NumericError("lowess: zero local weight mass");
    const double mx = swx / sw, my = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return my;
    return my + sxy / sxx * (x0 - mx);
}

}  // namespace

LowessFit lowess(std::span<const double> x, std::span<const double> y, double fraction,
                 int robustness_iterations) {
    if (x.size() != y.size()) throw InvalidInput("lowess: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw InvalidInput("lowess: need at least 3 observations");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw InvalidInput("lowess: fraction must be in (0, 1]");
    if (robustness_iterations < 0)
        throw InvalidInput("lowess: robustness_iterations must be >= 0");
    for (std::size_t i = 1; i < n; ++i)
        if (x[i] < x[i - 1]) throw InvalidInput("lowess: x must be sorted ascending");

    const std::size_t window =
        std::max<std::size_t>(2, static_cast<std::size_t>(
                                     std::ceil(fraction * static_cast<double>(n))));
    if (window > n) throw InvalidInput("lowess: window exceeds data size");

    LowessFit fit;
    fit.x.assign(x.begin(), x.end());
    fit.fraction = fraction;
    fit.robustness_iterations = robustness_iterations;
    fit.fitted.assign(n, 0.0);

    std::vector<double> robust(n, 1.0);
    std::vector<double> weights(n, 0.0);

    for (int pass = 0; pass <= robustness_iterations; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
            // Contiguous window of the nearest neighbors in x.
            std::size_t lo = i >= window - 1 ? i - (window - 1) : 0;
            std::size_t hi = lo + window - 1;
            while (hi < n - 1 && x[hi + 1] - x[i] < x[i] - x[lo]) {
                ++lo;
                ++hi;
            }
            double h = std::max(x[hi] - x[i], x[i] - x[lo]);
            for (std::size_t j = lo; j <= hi; ++j) {
                double tri = 1.0;
                if (h > 0.0) {
                    const double u = std::abs(x[j] - x[i]) / h;
                    tri = u >= 1.0 ? 0.0 : std::pow(1.0 - u * u * u, 3);
                }
                weights[j] = tri * robust[j];
            }
            fit.fitted[i] = local_fit(x, y, weights, lo, hi, x[i]);
        }

        if (pass == robustness_iterations) break;

        // Bisquare reweighting on residuals for the next pass.
        std::vector<double> abs_res(n);
        for (std::size_t i = 0; i < n; ++i) abs_res[i] = std::abs(y[i] - fit.fitted[i]);
        std::vector<double> sorted(abs_res);
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2),
                         sorted.end());
        double median = sorted[n / 2];
        if (n % 2 == 0) {
            std::nth_element(sorted.begin(),
                             sorted.begin() + static_cast<std::ptrdiff_t>(n / 2 - 1),
                             sorted.end());
            median = (median + sorted[n / 2 - 1]) / 2.0;
        }
        // Residuals at rounding-noise level mean the fit is exact; bisquare
        // scaling by their median would zero out almost every weight.
        double y_scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) y_scale = std::max(y_scale, std::abs(y[i]));
        if (median <= 1e-12 * y_scale) break;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = abs_res[i] / (6.0 * median);
            robust[i] = u >= 1.0 ? 0.0 : (1.0 - u * u) * (1.0 - u * u);
        }
    }
    return fit;
}

CorrelationReport correlate(const std::string& variable, std::span<const double> x,
                            std::span<const double> y) {
    CorrelationReport report;
    report.variable = variable;
    report.pearson = pearson(x, y);
    report.spearman = spearman(x, y);
    report.kendall = kendall(x, y);
    report.pearson_strength = strength_label(report.pearson);
    report.spearman_strength = strength_label(report.spearman);
    report.kendall_strength = strength_label(report.kendall);
    return report;
}

}  // namespace municlust
