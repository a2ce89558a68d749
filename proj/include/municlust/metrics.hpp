#pragma once

#include <span>
#include <string>

#include "municlust/matrix.hpp"

namespace municlust {

enum class Metric { Euclidean, Manhattan, Canberra, PearsonDistance };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

/// Pairwise dissimilarity between one set of entities. Symmetric, zero
/// diagonal, non-negative.
class DistanceMatrix {
public:
    DistanceMatrix(std::vector<double> values, std::size_t n, Metric metric,
                   std::vector<std::string> row_ids);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    Metric metric() const { return metric_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::string>& row_ids() const { return row_ids_; }

private:
    std::vector<double> values_;
    std::size_t n_ = 0;
    Metric metric_;
    std::vector<std::string> row_ids_;
};

/// Dissimilarity between two equal-length vectors. Canberra terms with a
/// 0/0 denominator contribute 0; PearsonDistance is 1 - r, range [0, 2],
/// and requires both vectors non-constant.
double distance(std::span<const double> a, std::span<const double> b, Metric metric);

enum class DistanceAxis { Rows, Columns };

DistanceMatrix distance_matrix(const FeatureMatrix& X, Metric metric,
                               DistanceAxis axis = DistanceAxis::Rows);

/// Rescale every column to sample mean 0 and sample standard deviation 1
/// (n-1 divisor). Constant columns are rejected by name.
FeatureMatrix standardize(const FeatureMatrix& X);

/// Sample Pearson correlation; throws NumericError on constant input.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace municlust
