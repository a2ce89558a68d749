#include "municlust/metrics.hpp"

#include <cmath>

namespace municlust {

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::Euclidean: return "euclidean";
        case Metric::Manhattan: return "manhattan";
        case Metric::Canberra: return "canberra";
        case Metric::PearsonDistance: return "pearson";
    }
    return "unknown";
}

Metric metric_from_name(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "manhattan") return Metric::Manhattan;
    if (name == "canberra") return Metric::Canberra;
    if (name == "pearson") return Metric::PearsonDistance;
    throw InvalidInput("unknown metric: " + name);
}

DistanceMatrix::DistanceMatrix(std::vector<double> values, std::size_t n, Metric metric,
                               std::vector<std::string> row_ids)
    : values_(std::move(values)), n_(n), metric_(metric), row_ids_(std::move(row_ids)) {
    if (values_.size() != n_ * n_) throw InvalidInput("DistanceMatrix value count mismatch");
    if (!row_ids_.empty() && row_ids_.size() != n_)
        throw InvalidInput("DistanceMatrix row_id count mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        if (values_[i * n_ + i] != 0.0) throw InvalidInput("DistanceMatrix diagonal must be zero");
        for (std::size_t j = 0; j < n_; ++j) {
            const double d = values_[i * n_ + j];
            if (!(d >= 0.0)) throw InvalidInput("DistanceMatrix entries must be non-negative");
            if (d != values_[j * n_ + i]) throw InvalidInput("DistanceMatrix must be symmetric");
        }
    }
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw InvalidInput("pearson: need at least 2 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw NumericError("pearson: correlation undefined for constant input");
    double r = sxy / std::sqrt(sxx * syy);
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
    if (a.size() != b.size()) throw InvalidInput("distance: length mismatch");
    if (a.empty()) throw InvalidInput("distance: empty vectors");
    switch (metric) {
        case Metric::Euclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Metric::Manhattan: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
            return s;
        }
        case Metric::Canberra: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double denom = std::abs(a[i]) + std::abs(b[i]);
                if (denom > 0.0) s += std::abs(a[i] - b[i]) / denom;
            }
            return s;
        }
        case Metric::PearsonDistance: {
            bool identical = true;
            for (std::size_t i = 0; i < a.size() && identical; ++i) identical = a[i] == b[i];
            if (identical) return 0.0;
            return 1.0 - pearson(a, b);
        }
    }
    throw InvalidInput("distance: unknown metric");
}

DistanceMatrix distance_matrix(const FeatureMatrix& X, Metric metric, DistanceAxis axis) {
    const bool by_rows = axis == DistanceAxis::Rows;
    if (!by_rows && X.cols() < 2)
        throw InvalidInput("distance_matrix over columns needs at least 2 columns");
    const std::size_t n = by_rows ? X.rows() : X.cols();
    std::vector<std::vector<double>> columns;
    if (!by_rows)
        for (std::size_t j = 0; j < n; ++j) columns.push_back(X.column(j));
    auto item = [&](std::size_t i) -> std::span<const double> {
        return by_rows ? X.row(i) : std::span<const double>(columns[i]);
    };
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d;
            try {
                d = distance(item(i), item(j), metric);
            } catch (const std::exception& e) {
                const auto& ids = by_rows ? X.row_ids() : X.column_names();
                throw NumericError("distance_matrix failed on pair (" + ids[i] + ", " + ids[j] +
                                   "): " + e.what());
            }
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DistanceMatrix(std::move(values), n, metric,
                          by_rows ? X.row_ids() : X.column_names());
}

FeatureMatrix standardize(const FeatureMatrix& X) {
    const std::size_t n = X.rows(), p = X.cols();
    std::vector<double> out(X.values());
    for (std::size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += X(i, j);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = X(i, j) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (sd == 0.0) throw NumericError("zero variance: " + X.column_names()[j]);
        for (std::size_t i = 0; i < n; ++i) out[i * p + j] = (X(i, j) - mean) / sd;
    }
    return FeatureMatrix(std::move(out), n, p, X.row_ids(), X.column_names());
}

}  // namespace municlust
