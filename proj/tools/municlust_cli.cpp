#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "municlust/report.hpp"
#include "municlust/stats.hpp"

using namespace municlust;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

void write_or_print(const json& doc, const std::string& out) {
    if (out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw InvalidInput("cannot write file: " + out);
        f << doc.dump(2) << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Clustering and correlation analysis for municipality-style datasets"};
    app.require_subcommand(1);

    std::string input, out, target = "MHR", x_col, y_col = "MHR";
    std::string algo = "kmeans", metric = "euclidean", linkage = "single", format = "json";
    std::string run_file;
    bool check = false, paper_data = false, no_standardize = false;
    int k = 0, k_min = 1, k_max = 5, gap_b = 50, min_pts = 4, restarts = 25;
    std::uint64_t seed = 0;
    std::size_t synth_n = 100;
    double eps = 1.0, lowess_frac = 2.0 / 3.0, separation = 6.0, noise_fraction = 0.0;

    auto* ingest = app.add_subcommand("ingest", "Validate an input CSV against the schema");
    ingest->add_option("--input", input)->required();
    ingest->add_flag("--check", check, "Only validate; print a fingerprint summary");

    auto* correlate_cmd =
        app.add_subcommand("correlate", "Correlation battery against a target variable");
    correlate_cmd->add_option("--input", input)->required();
    correlate_cmd->add_option("--target", target);
    correlate_cmd->add_flag("--paper-data", paper_data,
                            "Compare pearson(POPULATION, target) against the published value");

    auto* regress_cmd = app.add_subcommand("regress", "Linear regression plus LOWESS");
    regress_cmd->add_option("--input", input)->required();
    regress_cmd->add_option("--x", x_col)->required();
    regress_cmd->add_option("--y", y_col);
    regress_cmd->add_option("--lowess-frac", lowess_frac);

    auto* cluster_cmd = app.add_subcommand("cluster", "Run one clustering analysis");
    cluster_cmd->add_option("--input", input)->required();
    cluster_cmd->add_option("--algo", algo)->check(CLI::IsMember({"kmeans", "hier", "dbscan"}));
    cluster_cmd->add_option("--k", k);
    cluster_cmd->add_option("--metric", metric)
        ->check(CLI::IsMember({"euclidean", "manhattan", "canberra", "pearson"}));
    cluster_cmd->add_option("--linkage", linkage)->check(CLI::IsMember({"single", "complete"}));
    cluster_cmd->add_option("--eps", eps);
    cluster_cmd->add_option("--min-pts", min_pts);
    cluster_cmd->add_option("--seed", seed)->required();
    cluster_cmd->add_option("--restarts", restarts);
    cluster_cmd->add_option("--out", out);
    cluster_cmd->add_flag("--no-standardize", no_standardize);

    auto* validate_cmd = app.add_subcommand("validate", "Per-k validation sweep");
    validate_cmd->add_option("--input", input)->required();
    validate_cmd->add_option("--k-min", k_min);
    validate_cmd->add_option("--k-max", k_max);
    validate_cmd->add_option("--gap-b", gap_b);
    validate_cmd->add_option("--seed", seed)->required();
    validate_cmd->add_option("--metric", metric)
        ->check(CLI::IsMember({"euclidean", "manhattan", "canberra", "pearson"}));
    validate_cmd->add_option("--restarts", restarts);
    validate_cmd->add_option("--out", out);
    validate_cmd->add_flag("--no-standardize", no_standardize);

    auto* synth_cmd = app.add_subcommand("synth", "Write a schema-shaped synthetic dataset");
    synth_cmd->add_option("--seed", seed)->required();
    synth_cmd->add_option("--n", synth_n)->required();
    synth_cmd->add_option("--k", k)->required();
    synth_cmd->add_option("--separation", separation);
    synth_cmd->add_option("--noise", noise_fraction);
    synth_cmd->add_option("--out", out)->required();

    auto* report_cmd = app.add_subcommand("report", "Re-emit a saved run report");
    report_cmd->add_option("--run", run_file)->required();
    report_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "svg"}));
    report_cmd->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (ingest->parsed()) {
        const Dataset data = ingest_csv(input);
        json summary = {{"rows", data.features.rows()},
                        {"columns", data.features.column_names()},
                        {"hash", json(nullptr)}};
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(to_csv(data.features))));
        summary["hash"] = buf;
        std::cout << summary.dump(2) << "\n";
        return kExitOk;
    }

    if (correlate_cmd->parsed()) {
        const Dataset data = ingest_csv(input);
        const auto y = data.features.column(data.features.column_index(target));
        std::cout << "variable\tpearson\tspearman\tkendall\tstrength(pearson)\n";
        AnalysisConfig cfg;
        cfg.target = target;
        const json rows = run_analysis(cfg, data.features)["correlations"];
        for (const auto& row : rows) {
            if (row.contains("error")) {
                std::cout << row["variable"].get<std::string>() << "\t"
                          << row["error"].get<std::string>() << "\n";
                continue;
            }
            std::cout << row["variable"].get<std::string>() << "\t"
                      << row["pearson"].get<double>() << "\t" << row["spearman"].get<double>()
                      << "\t" << row["kendall"].get<double>() << "\t"
                      << row["pearson_strength"].get<std::string>() << "\n";
        }
        if (paper_data) {
            const auto pop = data.features.column(data.features.column_index("POPULATION"));
            const double r = pearson(pop, y);
            const double expected = 0.9915637;
            const bool ok = std::abs(r - expected) <= 1e-3;
            std::cout << "paper-check pearson(POPULATION," << target << ") = " << r
                      << " expected " << expected << " -> " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? kExitOk : kExitNumeric;
        }
        return kExitOk;
    }

    if (regress_cmd->parsed()) {
        const Dataset data = ingest_csv(input);
        auto xv = data.features.column(data.features.column_index(x_col));
        auto yv = data.features.column(data.features.column_index(y_col));
        std::vector<std::pair<double, double>> pts(xv.size());
        for (std::size_t i = 0; i < xv.size(); ++i) pts[i] = {xv[i], yv[i]};
        std::stable_sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            xv[i] = pts[i].first;
            yv[i] = pts[i].second;
        }
        const RegressionFit fit = linear_regression(xv, yv);
        const LowessFit smooth = lowess(xv, yv, lowess_frac, 3);
        json doc = {{"x", x_col},
                    {"y", y_col},
                    {"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"r_squared", fit.r_squared},
                    {"lowess", {{"fraction", smooth.fraction}, {"fitted", smooth.fitted}}}};
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
    }

    if (cluster_cmd->parsed() || validate_cmd->parsed()) {
        const Dataset data = ingest_csv(input);
        AnalysisConfig cfg;
        cfg.standardize = !no_standardize;
        cfg.metric = metric_from_name(metric);
        cfg.algorithm = cluster_cmd->parsed() ? algorithm_from_name(algo) : Algorithm::KMeans;
        cfg.k = k;
        cfg.linkage = linkage_from_name(linkage);
        cfg.eps = eps;
        cfg.min_pts = min_pts;
        cfg.k_min = k_min;
        cfg.k_max = k_max;
        cfg.gap_b = gap_b;
        cfg.restarts = restarts;
        cfg.seed = seed;
        write_or_print(run_analysis(cfg, data.features), out);
        return kExitOk;
    }

    if (synth_cmd->parsed()) {
        const Dataset data = synthesize_schema(seed, synth_n, k, separation, noise_fraction);
        write_csv(data.features, out);
        return kExitOk;
    }

    if (report_cmd->parsed()) {
        std::ifstream f(run_file);
        if (!f) throw InvalidInput("cannot open run file: " + run_file);
        json report = json::parse(f);
        for (const auto& path : emit_report(report, format, out))
            std::cout << path.string() << "\n";
        return kExitOk;
    }

    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
