#pragma once

#include <functional>

#include "municlust/clustering.hpp"

namespace municlust {

struct SilhouetteResult {
    std::vector<double> per_point;    // each in [-1, 1]
    std::vector<double> per_cluster;  // mean over cluster members
    double overall = 0.0;             // mean of cluster means
};

/// Silhouette orientation: Standard is (b - a)/max; PaperLiteral flips the
/// numerator to match the published formula as written.
enum class SilhouetteVariant { Standard, PaperLiteral };

SilhouetteResult silhouette(const DistanceMatrix& D, const ClusterAssignment& assignment,
                            SilhouetteVariant variant = SilhouetteVariant::Standard);

/// Pooled within-cluster dispersion W = sum_r (1/(2 n_r)) sum_{i,j in r} d(i,j)^2.
double pooled_within_dispersion(const DistanceMatrix& D, const ClusterAssignment& assignment);

struct GapResult {
    std::vector<int> k_values;
    std::vector<double> gap;
    std::vector<double> s;  // bootstrap spread, >= 0
    std::vector<double> log_w_observed;
    int b_copies = 0;
    std::uint64_t seed = 0;
};

/// Generates one reference dataset of the given shape; injectable for tests.
using ReferenceGenerator =
    std::function<FeatureMatrix(const FeatureMatrix& X, std::uint64_t copy_seed)>;

/// Default reference: uniform per column over the observed [min, max].
FeatureMatrix uniform_reference(const FeatureMatrix& X, std::uint64_t copy_seed);

GapResult gap_statistic(const FeatureMatrix& X, const std::vector<int>& k_values, int b_copies,
                        std::uint64_t seed, const KMeansConfig& clusterer,
                        const ReferenceGenerator& reference = uniform_reference);

struct SswCurve {
    std::vector<int> k_values;
    std::vector<double> ssw;
};

/// Sum of squared Euclidean distances to assigned centroids.
double ssw(const FeatureMatrix& X, const KMeansResult& result);

/// Picks the k whose value drops the most to its successor; ties -> smallest k.
int select_k_silhouette(const std::vector<int>& k_values,
                        const std::vector<double>& overall_by_k);

struct GapSelection {
    int k = 0;
    bool fallback = false;  // no k satisfied the criterion; largest k returned
};

/// Smallest k with gap(k) > gap(k+1) - s(k+1).
GapSelection select_k_gap(const GapResult& gap);

/// Knee: maximal perpendicular distance to the first-last chord, interior
/// points only; ties -> smallest k.
int select_k_elbow(const SswCurve& curve);

}  // namespace municlust
