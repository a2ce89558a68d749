#pragma once

#include <filesystem>

#include <json.hpp>

#include "municlust/dataset.hpp"
#include "municlust/validation.hpp"

namespace municlust {

enum class Algorithm { KMeans, Hierarchical, Dbscan };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct AnalysisConfig {
    bool standardize = true;
    Metric metric = Metric::Euclidean;
    Algorithm algorithm = Algorithm::KMeans;
    int k = 0;  // fixed cluster count for kmeans / dendrogram cut
    Linkage linkage = Linkage::Single;
    double eps = 1.0;
    int min_pts = 4;
    int k_min = 1;
    int k_max = 5;
    int gap_b = 50;
    int restarts = 25;
    std::uint64_t seed = 0;
    double lowess_fraction = 2.0 / 3.0;
    int lowess_iterations = 3;
    std::string target = "MHR";           // correlation/regression target
    std::vector<std::string> columns;     // optional feature subset
    std::string ideb_aggregation = "mean";
};

/// Runs correlate -> regress -> cluster -> validate and returns the full
/// self-describing report document. Deterministic for a fixed seed apart
/// from the "timing" field.
nlohmann::json run_analysis(const AnalysisConfig& config, const FeatureMatrix& X);

/// Writes report files under out_dir. format: json | csv | svg.
std::vector<std::filesystem::path> emit_report(const nlohmann::json& report,
                                               const std::string& format,
                                               const std::filesystem::path& out_dir);

}  // namespace municlust
