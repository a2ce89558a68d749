#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "municlust/metrics.hpp"

namespace municlust {

/// Label value for DBSCAN noise points.
inline constexpr int kNoise = -1;

/// Per-entity cluster labels plus a record of what produced them.
struct ClusterAssignment {
    std::vector<int> labels;  // 0..k-1 or kNoise
    int k = 0;                // number of non-noise clusters
    std::string algorithm;
    std::map<std::string, std::string> parameters;

    /// Checks the label invariants: non-noise labels cover 0..k-1 with no
    /// empty cluster, and noise appears only for DBSCAN provenance.
    void validate() const;

    std::vector<std::vector<std::size_t>> members() const;
    std::size_t noise_count() const;
};

struct KMeansConfig {
    int k = 2;
    Metric metric = Metric::Euclidean;
    int max_iterations = 100;
    int restarts = 25;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
};

struct KMeansResult {
    ClusterAssignment assignment;
    std::vector<std::vector<double>> centroids;  // k x p
    double objective = 0.0;                      // squared-Euclidean SSW
    int iterations_used = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // per-iteration, winning restart
};

/// Lloyd iteration with pluggable assignment metric and mean centroid
/// update; best of `restarts` seeded runs by squared-Euclidean objective.
KMeansResult kmeans(const FeatureMatrix& X, const KMeansConfig& config);

/// Total squared Euclidean distance of each point to its assigned centroid.
double kmeans_objective(const FeatureMatrix& X, const ClusterAssignment& assignment,
                        const std::vector<std::vector<double>>& centroids);

enum class Linkage { Single, Complete };

Linkage linkage_from_name(const std::string& name);
std::string linkage_name(Linkage l);

struct Merge {
    int left = 0;   // node id: leaves 0..n-1, internal n..2n-2
    int right = 0;
    double height = 0.0;
    std::size_t size = 0;  // entities in the merged cluster
};

struct Dendrogram {
    std::vector<Merge> merges;  // n-1 entries, heights non-decreasing
    Linkage linkage = Linkage::Single;
    Metric metric = Metric::Euclidean;

    std::size_t leaf_count() const { return merges.size() + 1; }
};

/// Agglomerative clustering over a precomputed distance matrix.
Dendrogram hierarchical(const DistanceMatrix& D, Linkage linkage);

/// Undo the last k-1 merges; labels are contiguous and ordered by each
/// cluster's smallest member index.
ClusterAssignment cut_dendrogram(const Dendrogram& dendrogram, int k);

struct DbscanConfig {
    double eps = 1.0;
    int min_pts = 1;
    Metric metric = Metric::Euclidean;
};

/// Density clustering over a precomputed distance matrix. Core points
/// count themselves; border ties go to the lowest-indexed cluster.
ClusterAssignment dbscan(const DistanceMatrix& D, const DbscanConfig& config);

}  // namespace municlust
