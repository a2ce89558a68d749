#pragma once

#include "municlust/metrics.hpp"

namespace municlust {

/// Average (fractional) ranks, 1-based; ties share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

/// Spearman's rho: Pearson correlation of the average-rank vectors.
double spearman(std::span<const double> x, std::span<const double> y);

/// Kendall's tau-b with tie correction, O(n^2) pair enumeration.
double kendall(std::span<const double> x, std::span<const double> y);

enum class Strength { Weak, Moderate, Strong, VeryStrong };

std::string strength_name(Strength s);

/// Bands on |r|, closed on the left: [0,0.4) weak, [0.4,0.7) moderate,
/// [0.7,0.9) strong, [0.9,1] very strong.
Strength strength_label(double r);

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of y on x.
RegressionFit linear_regression(std::span<const double> x, std::span<const double> y);

struct LowessFit {
    std::vector<double> x;
    std::vector<double> fitted;
    double fraction = 2.0 / 3.0;
    int robustness_iterations = 3;
};

/// Locally weighted regression: per-point line fit over the
/// ceil(fraction*n) nearest neighbors with tricube weights, plus bisquare
/// robustness reweighting passes. x must be sorted ascending.
LowessFit lowess(std::span<const double> x, std::span<const double> y,
                 double fraction = 2.0 / 3.0, int robustness_iterations = 3);

struct CorrelationReport {
    std::string variable;
    double pearson = 0.0;
    double spearman = 0.0;
    double kendall = 0.0;
    Strength pearson_strength = Strength::Weak;
    Strength spearman_strength = Strength::Weak;
    Strength kendall_strength = Strength::Weak;
};

CorrelationReport correlate(const std::string& variable, std::span<const double> x,
                            std::span<const double> y);

}  // namespace municlust
