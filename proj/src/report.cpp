#include "municlust/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "municlust/svg.hpp"

namespace municlust {

using nlohmann::json;

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "kmeans") return Algorithm::KMeans;
    if (name == "hier" || name == "hierarchical") return Algorithm::Hierarchical;
    if (name == "dbscan") return Algorithm::Dbscan;
    throw InvalidInput("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::KMeans: return "kmeans";
        case Algorithm::Hierarchical: return "hierarchical";
        case Algorithm::Dbscan: return "dbscan";
    }
    return "unknown";
}

namespace {

constexpr const char* kIdebYears[] = {"IDEB2005", "IDEB2007", "IDEB2009", "IDEB2011",
                                      "IDEB2013"};

bool is_ideb_year(const std::string& name) {
    return std::find(std::begin(kIdebYears), std::end(kIdebYears), name) != std::end(kIdebYears);
}

bool has_all_ideb_years(const FeatureMatrix& X) {
    for (const char* y : kIdebYears) {
        const auto& names = X.column_names();
        if (std::find(names.begin(), names.end(), y) == names.end()) return false;
    }
    return true;
}

std::vector<double> ideb_mean(const FeatureMatrix& X) {
    std::vector<double> out(X.rows(), 0.0);
    for (const char* y : kIdebYears) {
        const auto col = X.column(X.column_index(y));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += col[i];
    }
    for (double& v : out) v /= 5.0;
    return out;
}

/// Table II-style variable list: every non-target column, with the five
/// IDEB years collapsed into a single mean row when all are present.
std::vector<std::pair<std::string, std::vector<double>>> analysis_variables(
    const FeatureMatrix& X, const std::string& target) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    const bool aggregate = has_all_ideb_years(X);
    bool ideb_done = false;
    for (const auto& name : X.column_names()) {
        if (name == target) continue;
        if (aggregate && is_ideb_year(name)) {
            if (!ideb_done) {
                out.emplace_back("IDEB", ideb_mean(X));
                ideb_done = true;
            }
            continue;
        }
        out.emplace_back(name, X.column(X.column_index(name)));
    }
    return out;
}

json correlation_section(const FeatureMatrix& X, const std::string& target) {
    const auto y = X.column(X.column_index(target));
    json rows = json::array();
    for (const auto& [name, x] : analysis_variables(X, target)) {
        json row;
        row["variable"] = name;
        try {
            const CorrelationReport r = correlate(name, x, y);
            row["pearson"] = r.pearson;
            row["spearman"] = r.spearman;
            row["kendall"] = r.kendall;
            row["pearson_strength"] = strength_name(r.pearson_strength);
            row["spearman_strength"] = strength_name(r.spearman_strength);
            row["kendall_strength"] = strength_name(r.kendall_strength);
        } catch (const NumericError& e) {
            row["error"] = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json regression_section(const FeatureMatrix& X, const std::string& target,
                        const AnalysisConfig& cfg) {
    const auto y = X.column(X.column_index(target));
    json rows = json::array();
    for (const auto& [name, x] : analysis_variables(X, target)) {
        json row;
        row["variable"] = name;
        // Sort by x for the LOWESS pass; emit in sorted order.
        std::vector<std::size_t> order(x.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&, &xv = x](std::size_t a, std::size_t b) { return xv[a] < xv[b]; });
        std::vector<double> xs(x.size()), ys(x.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            xs[i] = x[order[i]];
            ys[i] = y[order[i]];
        }
        try {
            const RegressionFit fit = linear_regression(xs, ys);
            row["slope"] = fit.slope;
            row["intercept"] = fit.intercept;
            row["r_squared"] = fit.r_squared;
            const LowessFit smooth = lowess(xs, ys, cfg.lowess_fraction, cfg.lowess_iterations);
            row["lowess"] = {{"fraction", smooth.fraction},
                             {"iterations", smooth.robustness_iterations},
                             {"fitted", smooth.fitted}};
            row["points"] = {{"x", xs}, {"y", ys}};
        } catch (const NumericError& e) {
            row["error"] = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json assignment_json(const ClusterAssignment& a) {
    return {{"algorithm", a.algorithm},
            {"parameters", a.parameters},
            {"k", a.k},
            {"noise_count", a.noise_count()},
            {"labels", a.labels}};
}

json dendrogram_json(const Dendrogram& d) {
    json merges = json::array();
    for (const Merge& m : d.merges)
        merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height},
                          {"size", m.size}});
    return {{"linkage", linkage_name(d.linkage)},
            {"metric", metric_name(d.metric)},
            {"merges", std::move(merges)}};
}

double ssw_from_assignment(const FeatureMatrix& X, const ClusterAssignment& a) {
    std::vector<std::vector<double>> centroids(static_cast<std::size_t>(a.k),
                                               std::vector<double>(X.cols(), 0.0));
    std::vector<std::size_t> counts(static_cast<std::size_t>(a.k), 0);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto c = static_cast<std::size_t>(a.labels[i]);
        ++counts[c];
        for (std::size_t j = 0; j < X.cols(); ++j) centroids[c][j] += X(i, j);
    }
    for (std::size_t c = 0; c < centroids.size(); ++c)
        for (double& v : centroids[c]) v /= static_cast<double>(counts[c]);
    return kmeans_objective(X, a, centroids);
}

ClusterAssignment sweep_assignment(const FeatureMatrix& X, const DistanceMatrix& D,
                                   const Dendrogram* dendro, const AnalysisConfig& cfg, int k) {
    if (cfg.algorithm == Algorithm::Hierarchical) return cut_dendrogram(*dendro, k);
    KMeansConfig kc{k, cfg.metric, 100, cfg.restarts, cfg.seed, 1e-8};
    (void)D;
    return kmeans(X, kc).assignment;
}

json validation_section(const FeatureMatrix& X, const DistanceMatrix& D,
                        const Dendrogram* dendro, const AnalysisConfig& cfg) {
    json out;
    std::vector<int> k_values;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) k_values.push_back(k);
    out["k_values"] = k_values;

    SswCurve curve;
    std::vector<int> sil_k;
    std::vector<double> sil_values;
    for (int k : k_values) {
        const ClusterAssignment a = sweep_assignment(X, D, dendro, cfg, k);
        curve.k_values.push_back(k);
        curve.ssw.push_back(ssw_from_assignment(X, a));
        if (k >= 2) {
            sil_k.push_back(k);
            sil_values.push_back(silhouette(D, a).overall);
        }
    }
    out["ssw"] = curve.ssw;
    out["silhouette_k"] = sil_k;
    out["silhouette"] = sil_values;

    KMeansConfig gap_clusterer{2, Metric::Euclidean, 100, cfg.restarts, cfg.seed, 1e-8};
    const GapResult gap = gap_statistic(X, k_values, cfg.gap_b, cfg.seed, gap_clusterer);
    out["gap"] = gap.gap;
    out["gap_s"] = gap.s;
    out["log_w_observed"] = gap.log_w_observed;
    out["gap_b"] = gap.b_copies;

    json selected;
    if (sil_values.size() >= 2)
        selected["silhouette"] = select_k_silhouette(sil_k, sil_values);
    const GapSelection gsel = select_k_gap(gap);
    selected["gap"] = gsel.k;
    selected["gap_fallback"] = gsel.fallback;
    if (curve.k_values.size() >= 3) selected["elbow"] = select_k_elbow(curve);
    out["selected_k"] = std::move(selected);
    return out;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json config_json(const AnalysisConfig& c) {
    return {{"standardize", c.standardize},
            {"metric", metric_name(c.metric)},
            {"algorithm", algorithm_name(c.algorithm)},
            {"k", c.k},
            {"linkage", linkage_name(c.linkage)},
            {"eps", c.eps},
            {"min_pts", c.min_pts},
            {"k_min", c.k_min},
            {"k_max", c.k_max},
            {"gap_b", c.gap_b},
            {"restarts", c.restarts},
            {"seed", c.seed},
            {"lowess_fraction", c.lowess_fraction},
            {"lowess_iterations", c.lowess_iterations},
            {"target", c.target},
            {"columns", c.columns},
            {"ideb_aggregation", c.ideb_aggregation}};
}

}  // namespace

json run_analysis(const AnalysisConfig& cfg, const FeatureMatrix& X_in) {
    const auto t0 = std::chrono::steady_clock::now();

    json report;
    report["config"] = config_json(cfg);
    report["dataset"] = {{"rows", X_in.rows()},
                         {"columns", X_in.column_names()},
                         {"hash", hash_hex(fnv1a64(to_csv(X_in)))}};

    // Correlation and regression run on raw values against the target.
    const auto& names = X_in.column_names();
    const bool has_target = std::find(names.begin(), names.end(), cfg.target) != names.end();
    if (has_target) {
        report["correlations"] = correlation_section(X_in, cfg.target);
        report["regressions"] = regression_section(X_in, cfg.target, cfg);
    } else {
        report["correlations"] = nullptr;
        report["regressions"] = nullptr;
    }

    // Optional column subset, then optional standardization, for clustering.
    FeatureMatrix X = X_in;
    if (!cfg.columns.empty()) {
        std::vector<double> values;
        for (std::size_t i = 0; i < X_in.rows(); ++i)
            for (const auto& c : cfg.columns) values.push_back(X_in(i, X_in.column_index(c)));
        X = FeatureMatrix(std::move(values), X_in.rows(), cfg.columns.size(), X_in.row_ids(),
                          cfg.columns);
    }
    if (cfg.standardize) X = standardize(X);

    const DistanceMatrix D = distance_matrix(X, cfg.metric);
    if (X.cols() >= 2) {
        const DistanceMatrix CD = distance_matrix(X, cfg.metric, DistanceAxis::Columns);
        report["column_distances"] = {{"labels", CD.row_ids()}, {"values", CD.values()}};
    }

    Dendrogram dendro;
    bool have_dendro = false;
    ClusterAssignment assignment;
    switch (cfg.algorithm) {
        case Algorithm::KMeans: {
            const int k = cfg.k > 0 ? cfg.k : 4;
            KMeansConfig kc{k, cfg.metric, 100, cfg.restarts, cfg.seed, 1e-8};
            const KMeansResult result = kmeans(X, kc);
            assignment = result.assignment;
            report["clustering"] = assignment_json(assignment);
            report["clustering"]["centroids"] = result.centroids;
            report["clustering"]["objective"] = result.objective;
            report["clustering"]["iterations"] = result.iterations_used;
            report["clustering"]["converged"] = result.converged;
            break;
        }
        case Algorithm::Hierarchical: {
            dendro = hierarchical(D, cfg.linkage);
            have_dendro = true;
            const int k = cfg.k > 0 ? cfg.k : 3;
            assignment = cut_dendrogram(dendro, k);
            report["clustering"] = assignment_json(assignment);
            report["clustering"]["dendrogram"] = dendrogram_json(dendro);
            break;
        }
        case Algorithm::Dbscan: {
            assignment = dbscan(D, {cfg.eps, cfg.min_pts, cfg.metric});
            report["clustering"] = assignment_json(assignment);
            break;
        }
    }

    if (cfg.algorithm == Algorithm::Dbscan) {
        // No k to sweep; score the found partition where it is defined.
        if (assignment.k >= 2 && assignment.noise_count() < X.rows()) {
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < assignment.labels.size(); ++i)
                if (assignment.labels[i] != kNoise) keep.push_back(i);
            std::vector<double> sub(keep.size() * keep.size(), 0.0);
            for (std::size_t a = 0; a < keep.size(); ++a)
                for (std::size_t b = 0; b < keep.size(); ++b) sub[a * keep.size() + b] = D(keep[a], keep[b]);
            std::vector<std::string> ids;
            for (std::size_t i : keep) ids.push_back(D.row_ids()[i]);
            DistanceMatrix Dsub(std::move(sub), keep.size(), D.metric(), std::move(ids));
            ClusterAssignment core{{}, assignment.k, "dbscan", assignment.parameters};
            for (std::size_t i : keep) core.labels.push_back(assignment.labels[i]);
            report["validation"] = {{"applicable", true},
                                    {"silhouette", silhouette(Dsub, core).overall}};
        } else {
            report["validation"] = {{"applicable", false},
                                    {"reason", "fewer than 2 clusters found"}};
        }
    } else {
        report["validation"] =
            validation_section(X, D, have_dendro ? &dendro : nullptr, cfg);
        report["validation"]["applicable"] = true;
    }

    const auto t1 = std::chrono::steady_clock::now();
    report["timing"] = {
        {"seconds", std::chrono::duration<double>(t1 - t0).count()}};
    return report;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path.string());
    out << bytes;
}

std::string csv_num(const json& v) {
    char buf[32];
    auto d = v.get<double>();
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

void emit_csv(const json& report, const std::filesystem::path& dir,
              std::vector<std::filesystem::path>& written) {
    if (report.contains("correlations") && report["correlations"].is_array()) {
        std::string out = "variable,pearson,spearman,kendall,pearson_strength,"
                          "spearman_strength,kendall_strength\n";
        for (const auto& row : report["correlations"]) {
            if (row.contains("error")) continue;
            out += row["variable"].get<std::string>() + ',' + csv_num(row["pearson"]) + ',' +
                   csv_num(row["spearman"]) + ',' + csv_num(row["kendall"]) + ',' +
                   row["pearson_strength"].get<std::string>() + ',' +
                   row["spearman_strength"].get<std::string>() + ',' +
                   row["kendall_strength"].get<std::string>() + '\n';
        }
        write_file(dir / "correlations.csv", out);
        written.push_back(dir / "correlations.csv");
    }
    if (report["validation"].contains("k_values")) {
        const auto& v = report["validation"];
        std::string out = "k,ssw,gap,gap_s,silhouette\n";
        const auto& ks = v["k_values"];
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const int k = ks[i].get<int>();
            out += std::to_string(k) + ',' + csv_num(v["ssw"][i]) + ',' + csv_num(v["gap"][i]) +
                   ',' + csv_num(v["gap_s"][i]) + ',';
            const auto& sk = v["silhouette_k"];
            for (std::size_t s = 0; s < sk.size(); ++s)
                if (sk[s].get<int>() == k) out += csv_num(v["silhouette"][s]);
            out += '\n';
        }
        write_file(dir / "validation.csv", out);
        written.push_back(dir / "validation.csv");
    }
    {
        std::string out = "index,label\n";
        const auto& labels = report["clustering"]["labels"];
        for (std::size_t i = 0; i < labels.size(); ++i)
            out += std::to_string(i) + ',' + std::to_string(labels[i].get<int>()) + '\n';
        write_file(dir / "assignments.csv", out);
        written.push_back(dir / "assignments.csv");
    }
}

void emit_svg(const json& report, const std::filesystem::path& dir,
              std::vector<std::filesystem::path>& written) {
    if (report.contains("regressions") && report["regressions"].is_array()) {
        for (const auto& row : report["regressions"]) {
            if (row.contains("error")) continue;
            RegressionFit fit{row["slope"].get<double>(), row["intercept"].get<double>(),
                              row["r_squared"].get<double>()};
            LowessFit smooth;
            smooth.x = row["points"]["x"].get<std::vector<double>>();
            smooth.fitted = row["lowess"]["fitted"].get<std::vector<double>>();
            const auto name = row["variable"].get<std::string>();
            const auto path = dir / ("scatter_" + name + ".svg");
            write_file(path, svg_scatter(smooth.x, row["points"]["y"].get<std::vector<double>>(),
                                         fit, smooth, name,
                                         report["config"]["target"].get<std::string>()));
            written.push_back(path);
        }
    }
    if (report.contains("column_distances")) {
        const auto& cd = report["column_distances"];
        const auto labels = cd["labels"].get<std::vector<std::string>>();
        const auto path = dir / "column_distances.svg";
        write_file(path, svg_heatmap(cd["values"].get<std::vector<double>>(), labels.size(),
                                     labels, "Column distance matrix"));
        written.push_back(path);
    }
    if (report["clustering"].contains("dendrogram")) {
        const auto& dj = report["clustering"]["dendrogram"];
        Dendrogram d;
        d.linkage = linkage_from_name(dj["linkage"].get<std::string>());
        d.metric = metric_from_name(dj["metric"].get<std::string>());
        for (const auto& m : dj["merges"])
            d.merges.push_back({m["left"].get<int>(), m["right"].get<int>(),
                                m["height"].get<double>(), m["size"].get<std::size_t>()});
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < d.leaf_count(); ++i) labels.push_back(std::to_string(i));
        const auto path = dir / "dendrogram.svg";
        write_file(path, svg_dendrogram(d, labels));
        written.push_back(path);
    }
    if (report["validation"].contains("k_values")) {
        const auto& v = report["validation"];
        std::map<std::string, std::vector<double>> series;
        series["ssw"] = v["ssw"].get<std::vector<double>>();
        series["gap"] = v["gap"].get<std::vector<double>>();
        const auto path = dir / "validation_curves.svg";
        write_file(path, svg_curves(v["k_values"].get<std::vector<int>>(), series,
                                    "Validation measures"));
        written.push_back(path);
        if (v["silhouette"].size() >= 2) {
            const auto spath = dir / "silhouette_curve.svg";
            write_file(spath, svg_curves(v["silhouette_k"].get<std::vector<int>>(),
                                         {{"silhouette",
                                           v["silhouette"].get<std::vector<double>>()}},
                                         "Silhouette by k"));
            written.push_back(spath);
        }
    }
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const json& report, const std::string& format,
                                               const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    if (format == "json") {
        const auto path = out_dir / "report.json";
        write_file(path, report.dump(2) + "\n");
        written.push_back(path);
    } else if (format == "csv") {
        emit_csv(report, out_dir, written);
    } else if (format == "svg") {
        emit_svg(report, out_dir, written);
    } else {
        throw InvalidInput("unknown report format: " + format);
    }
    return written;
}

}  // namespace municlust
