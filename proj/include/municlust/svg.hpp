#pragma once

#include <map>
#include <string>
#include <vector>

#include "municlust/clustering.hpp"
#include "municlust/stats.hpp"

namespace municlust {

/// Deterministic SVG renderers: fixed 640x480 canvas, no timestamps, all
/// numbers printed with fixed precision so identical input gives
/// identical bytes.

std::string svg_scatter(const std::vector<double>& x, const std::vector<double>& y,
                        const RegressionFit& line, const LowessFit& smooth,
                        const std::string& x_label, const std::string& y_label);

std::string svg_heatmap(const std::vector<double>& values, std::size_t n,
                        const std::vector<std::string>& labels, const std::string& title);

/// One polyline with class "merge" per dendrogram join.
std::string svg_dendrogram(const Dendrogram& dendrogram,
                           const std::vector<std::string>& leaf_labels);

/// One polyline per named series over a shared k axis.
std::string svg_curves(const std::vector<int>& k_values,
                       const std::map<std::string, std::vector<double>>& series,
                       const std::string& title);

}  // namespace municlust
