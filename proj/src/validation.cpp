#include "municlust/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace municlust {

SilhouetteResult silhouette(const DistanceMatrix& D, const ClusterAssignment& assignment,
                            SilhouetteVariant variant) {
    if (assignment.k < 2) throw InvalidInput("silhouette: need at least 2 clusters");
    if (assignment.noise_count() > 0)
        throw InvalidInput("silhouette: exclude noise points before scoring");
    assignment.validate();
    const std::size_t n = D.size();
    if (assignment.labels.size() != n) throw InvalidInput("silhouette: label count mismatch");

    const auto clusters = assignment.members();
    SilhouetteResult out;
    out.per_point.assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = static_cast<std::size_t>(assignment.labels[i]);
        if (clusters[own].size() == 1) {
            out.per_point[i] = 0.0;  // singleton convention
            continue;
        }
        double a = 0.0;
        for (std::size_t j : clusters[own])
            if (j != i) a += D(i, j);
        a /= static_cast<double>(clusters[own].size() - 1);

        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (c == own) continue;
            double mean = 0.0;
            for (std::size_t j : clusters[c]) mean += D(i, j);
            mean /= static_cast<double>(clusters[c].size());
            b = std::min(b, mean);
        }

        const double denom = std::max(a, b);
        double s = denom == 0.0 ? 0.0 : (b - a) / denom;
        if (variant == SilhouetteVariant::PaperLiteral) s = -s;
        out.per_point[i] = s;
    }

    out.per_cluster.assign(clusters.size(), 0.0);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t i : clusters[c]) out.per_cluster[c] += out.per_point[i];
        out.per_cluster[c] /= static_cast<double>(clusters[c].size());
    }
    for (double v : out.per_cluster) out.overall += v;
    out.overall /= static_cast<double>(out.per_cluster.size());
    return out;
}

double pooled_within_dispersion(const DistanceMatrix& D, const ClusterAssignment& assignment) {
    if (assignment.noise_count() > 0)
        throw InvalidInput("pooled_within_dispersion: noise labels not allowed");
    assignment.validate();
    if (assignment.labels.size() != D.size())
        throw InvalidInput("pooled_within_dispersion: label count mismatch");
    double w = 0.0;
    for (const auto& cluster : assignment.members()) {
        double sum = 0.0;
        for (std::size_t i : cluster)
            for (std::size_t j : cluster) sum += D(i, j) * D(i, j);
        w += sum / (2.0 * static_cast<double>(cluster.size()));
    }
    return w;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

FeatureMatrix uniform_reference(const FeatureMatrix& X, std::uint64_t copy_seed) {
    const std::size_t n = X.rows(), p = X.cols();
    std::vector<double> lo(p), hi(p);
    for (std::size_t j = 0; j < p; ++j) {
        const auto col = X.column(j);
        lo[j] = *std::min_element(col.begin(), col.end());
        hi[j] = *std::max_element(col.begin(), col.end());
        if (lo[j] == hi[j])
            throw NumericError("degenerate column range: " + X.column_names()[j]);
    }
    std::mt19937_64 rng(copy_seed);
    std::vector<double> values(n * p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            std::uniform_real_distribution<double> u(lo[j], hi[j]);
            values[i * p + j] = u(rng);
        }
    return FeatureMatrix(std::move(values), n, p, X.row_ids(), X.column_names());
}

GapResult gap_statistic(const FeatureMatrix& X, const std::vector<int>& k_values, int b_copies,
                        std::uint64_t seed, const KMeansConfig& clusterer,
                        const ReferenceGenerator& reference) {
    if (b_copies < 1) throw InvalidInput("gap_statistic: B must be >= 1");
    if (k_values.empty()) throw InvalidInput("gap_statistic: k_values must be nonempty");
    for (int k : k_values)
        if (k < 1 || static_cast<std::size_t>(k) > X.rows())
            throw InvalidInput("gap_statistic: k out of range");

    auto log_w_for = [&](const FeatureMatrix& data, int k, std::uint64_t run_seed) {
        KMeansConfig cfg = clusterer;
        cfg.k = k;
        cfg.metric = Metric::Euclidean;
        cfg.seed = run_seed;
        const KMeansResult result = kmeans(data, cfg);
        const DistanceMatrix D = distance_matrix(data, Metric::Euclidean);
        return std::log(std::max(pooled_within_dispersion(D, result.assignment),
                                 std::numeric_limits<double>::min()));
    };

    GapResult out;
    out.k_values = k_values;
    out.b_copies = b_copies;
    out.seed = seed;

    // References are shared across k so every k sees the same null draws.
    std::vector<FeatureMatrix> refs;
    refs.reserve(static_cast<std::size_t>(b_copies));
    for (int b = 0; b < b_copies; ++b)
        refs.push_back(reference(X, mix(seed ^ mix(static_cast<std::uint64_t>(b) + 1))));

    for (int k : k_values) {
        const double log_w_obs = log_w_for(X, k, seed);
        std::vector<double> log_w_ref;
        log_w_ref.reserve(refs.size());
        for (const FeatureMatrix& ref : refs) log_w_ref.push_back(log_w_for(ref, k, seed));

        double mean = 0.0;
        for (double v : log_w_ref) mean += v;
        mean /= static_cast<double>(log_w_ref.size());
        double var = 0.0;
        for (double v : log_w_ref) var += (v - mean) * (v - mean);
        var /= static_cast<double>(log_w_ref.size());  // population sd; 0 when B=1

        out.log_w_observed.push_back(log_w_obs);
        out.gap.push_back(mean - log_w_obs);
        out.s.push_back(std::sqrt(var) * std::sqrt(1.0 + 1.0 / static_cast<double>(b_copies)));
    }
    return out;
}

double ssw(const FeatureMatrix& X, const KMeansResult& result) {
    return kmeans_objective(X, result.assignment, result.centroids);
}

int select_k_silhouette(const std::vector<int>& k_values,
                        const std::vector<double>& overall_by_k) {
    if (overall_by_k.size() < 2 || k_values.size() != overall_by_k.size())
        throw InvalidInput("select_k_silhouette: need at least 2 consecutive entries");
    for (std::size_t i = 1; i < k_values.size(); ++i)
        if (k_values[i] != k_values[i - 1] + 1)
            throw InvalidInput("select_k_silhouette: k values must be consecutive");
    std::size_t best = 0;
    double best_drop = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < overall_by_k.size(); ++i) {
        const double drop = overall_by_k[i] - overall_by_k[i + 1];
        if (drop > best_drop) {
            best_drop = drop;
            best = i;
        }
    }
    return k_values[best];
}

GapSelection select_k_gap(const GapResult& gap) {
    if (gap.k_values.size() < 2) throw InvalidInput("select_k_gap: need at least 2 entries");
    for (std::size_t i = 1; i < gap.k_values.size(); ++i)
        if (gap.k_values[i] != gap.k_values[i - 1] + 1)
            throw InvalidInput("select_k_gap: k values must be consecutive");
    for (std::size_t i = 0; i + 1 < gap.k_values.size(); ++i)
        if (gap.gap[i] > gap.gap[i + 1] - gap.s[i + 1]) return {gap.k_values[i], false};
    return {gap.k_values.back(), true};
}

int select_k_elbow(const SswCurve& curve) {
    const std::size_t m = curve.k_values.size();
    if (m < 3 || curve.ssw.size() != m)
        throw InvalidInput("select_k_elbow: need at least 3 entries");
    const double x0 = curve.k_values.front(), y0 = curve.ssw.front();
    const double x1 = curve.k_values.back(), y1 = curve.ssw.back();
    const double len = std::hypot(x1 - x0, y1 - y0);
    std::size_t best = 1;
    double best_d = -1.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double x = curve.k_values[i], y = curve.ssw[i];
        const double d = std::abs((y1 - y0) * x - (x1 - x0) * y + x1 * y0 - y1 * x0) / len;
        if (d > best_d + 1e-15) {
            best_d = d;
            best = i;
        }
    }
    return curve.k_values[best];
}

}  // namespace municlust
