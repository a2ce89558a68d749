#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "municlust/report.hpp"
#include "municlust/stats.hpp"

namespace py = pybind11;
using namespace municlust;

namespace {

FeatureMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows,
                               std::vector<std::string> row_ids,
                               std::vector<std::string> column_names) {
    return FeatureMatrix::from_rows(rows, std::move(row_ids), std::move(column_names));
}

std::vector<std::vector<double>> matrix_values(const DistanceMatrix& D) {
    std::vector<std::vector<double>> out(D.size(), std::vector<double>(D.size()));
    for (std::size_t i = 0; i < D.size(); ++i)
        for (std::size_t j = 0; j < D.size(); ++j) out[i][j] = D(i, j);
    return out;
}

}  // namespace

PYBIND11_MODULE(_municlust, m) {
    m.doc() = "Clustering, validation and correlation primitives";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::enum_<Metric>(m, "Metric")
        .value("euclidean", Metric::Euclidean)
        .value("manhattan", Metric::Manhattan)
        .value("canberra", Metric::Canberra)
        .value("pearson", Metric::PearsonDistance);

    py::enum_<Linkage>(m, "Linkage")
        .value("single", Linkage::Single)
        .value("complete", Linkage::Complete);

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"),
             py::arg("row_ids") = std::vector<std::string>{},
             py::arg("column_names") = std::vector<std::string>{})
        .def_property_readonly("shape",
                               [](const FeatureMatrix& X) {
                                   return py::make_tuple(X.rows(), X.cols());
                               })
        .def("row", [](const FeatureMatrix& X, std::size_t i) {
            return std::vector<double>(X.row(i).begin(), X.row(i).end());
        })
        .def("column", [](const FeatureMatrix& X, const std::string& name) {
            return X.column(X.column_index(name));
        })
        .def_property_readonly("row_ids", &FeatureMatrix::row_ids)
        .def_property_readonly("column_names", &FeatureMatrix::column_names);

    py::class_<DistanceMatrix>(m, "DistanceMatrix")
        .def_property_readonly("values", &matrix_values)
        .def("__len__", &DistanceMatrix::size)
        .def("__getitem__", [](const DistanceMatrix& D, std::pair<std::size_t, std::size_t> ij) {
            return D(ij.first, ij.second);
        });

    py::class_<ClusterAssignment>(m, "ClusterAssignment")
        .def_readonly("labels", &ClusterAssignment::labels)
        .def_readonly("k", &ClusterAssignment::k)
        .def_readonly("algorithm", &ClusterAssignment::algorithm)
        .def_readonly("parameters", &ClusterAssignment::parameters);

    py::class_<KMeansResult>(m, "KMeansResult")
        .def_readonly("assignment", &KMeansResult::assignment)
        .def_readonly("centroids", &KMeansResult::centroids)
        .def_readonly("objective", &KMeansResult::objective)
        .def_readonly("iterations_used", &KMeansResult::iterations_used)
        .def_readonly("converged", &KMeansResult::converged);

    py::class_<Merge>(m, "Merge")
        .def_readonly("left", &Merge::left)
        .def_readonly("right", &Merge::right)
        .def_readonly("height", &Merge::height)
        .def_readonly("size", &Merge::size);

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("merges", &Dendrogram::merges)
        .def_property_readonly("leaf_count", &Dendrogram::leaf_count);

    py::class_<SilhouetteResult>(m, "SilhouetteResult")
        .def_readonly("per_point", &SilhouetteResult::per_point)
        .def_readonly("per_cluster", &SilhouetteResult::per_cluster)
        .def_readonly("overall", &SilhouetteResult::overall);

    py::class_<GapResult>(m, "GapResult")
        .def_readonly("k_values", &GapResult::k_values)
        .def_readonly("gap", &GapResult::gap)
        .def_readonly("s", &GapResult::s)
        .def_readonly("log_w_observed", &GapResult::log_w_observed);

    py::class_<RegressionFit>(m, "RegressionFit")
        .def_readonly("slope", &RegressionFit::slope)
        .def_readonly("intercept", &RegressionFit::intercept)
        .def_readonly("r_squared", &RegressionFit::r_squared);

    py::class_<LowessFit>(m, "LowessFit")
        .def_readonly("x", &LowessFit::x)
        .def_readonly("fitted", &LowessFit::fitted);

    m.def("distance",
          [](const std::vector<double>& a, const std::vector<double>& b, Metric metric) {
              return distance(a, b, metric);
          },
          py::arg("a"), py::arg("b"), py::arg("metric") = Metric::Euclidean);
    m.def("distance_matrix",
          [](const FeatureMatrix& X, Metric metric, const std::string& axis) {
              return distance_matrix(
                  X, metric, axis == "columns" ? DistanceAxis::Columns : DistanceAxis::Rows);
          },
          py::arg("X"), py::arg("metric") = Metric::Euclidean, py::arg("axis") = "rows");
    m.def("standardize", &standardize);

    m.def("kmeans",
          [](const FeatureMatrix& X, int k, Metric metric, int restarts, std::uint64_t seed) {
              return kmeans(X, KMeansConfig{k, metric, 100, restarts, seed, 1e-8});
          },
          py::arg("X"), py::arg("k"), py::arg("metric") = Metric::Euclidean,
          py::arg("restarts") = 25, py::arg("seed") = 0);
    m.def("hierarchical", &hierarchical, py::arg("D"), py::arg("linkage") = Linkage::Single);
    m.def("cut_dendrogram", &cut_dendrogram);
    m.def("dbscan",
          [](const DistanceMatrix& D, double eps, int min_pts) {
              return dbscan(D, DbscanConfig{eps, min_pts, D.metric()});
          },
          py::arg("D"), py::arg("eps"), py::arg("min_pts"));

    m.def("silhouette",
          [](const DistanceMatrix& D, const ClusterAssignment& a) { return silhouette(D, a); });
    m.def("pooled_within_dispersion", &pooled_within_dispersion);
    m.def("gap_statistic",
          [](const FeatureMatrix& X, const std::vector<int>& k_values, int b, std::uint64_t seed,
             int restarts) {
              return gap_statistic(X, k_values, b, seed,
                                   KMeansConfig{2, Metric::Euclidean, 100, restarts, seed, 1e-8});
          },
          py::arg("X"), py::arg("k_values"), py::arg("b") = 50, py::arg("seed") = 0,
          py::arg("restarts") = 10);
    m.def("ssw", &ssw);
    m.def("select_k_silhouette", &select_k_silhouette);
    m.def("select_k_gap", [](const GapResult& g) {
        const GapSelection s = select_k_gap(g);
        return py::make_tuple(s.k, s.fallback);
    });
    m.def("select_k_elbow", [](const std::vector<int>& k_values, const std::vector<double>& ssw) {
        return select_k_elbow(SswCurve{k_values, ssw});
    });

    m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
        return pearson(x, y);
    });
    m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) {
        return spearman(x, y);
    });
    m.def("kendall", [](const std::vector<double>& x, const std::vector<double>& y) {
        return kendall(x, y);
    });
    m.def("strength_label", [](double r) { return strength_name(strength_label(r)); });
    m.def("linear_regression",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return linear_regression(x, y);
          });
    m.def("lowess",
          [](const std::vector<double>& x, const std::vector<double>& y, double fraction,
             int iterations) { return lowess(x, y, fraction, iterations); },
          py::arg("x"), py::arg("y"), py::arg("fraction") = 2.0 / 3.0,
          py::arg("iterations") = 3);

    m.def("synthesize",
          [](std::uint64_t seed, std::size_t n, int k, double separation, double noise_fraction,
             std::size_t dims) {
              const SynthesisResult r = synthesize(seed, n, k, separation, noise_fraction, dims);
              return py::make_tuple(r.X, r.true_labels);
          },
          py::arg("seed"), py::arg("n"), py::arg("k"), py::arg("separation") = 6.0,
          py::arg("noise_fraction") = 0.0, py::arg("dims") = 2);

    m.def("run_analysis_json",
          [](const std::string& config_json, const FeatureMatrix& X) {
              const auto cj = nlohmann::json::parse(config_json);
              AnalysisConfig cfg;
              if (cj.contains("standardize")) cfg.standardize = cj["standardize"];
              if (cj.contains("metric")) cfg.metric = metric_from_name(cj["metric"]);
              if (cj.contains("algorithm"))
                  cfg.algorithm = algorithm_from_name(cj["algorithm"]);
              if (cj.contains("k")) cfg.k = cj["k"];
              if (cj.contains("linkage")) cfg.linkage = linkage_from_name(cj["linkage"]);
              if (cj.contains("eps")) cfg.eps = cj["eps"];
              if (cj.contains("min_pts")) cfg.min_pts = cj["min_pts"];
              if (cj.contains("k_min")) cfg.k_min = cj["k_min"];
              if (cj.contains("k_max")) cfg.k_max = cj["k_max"];
              if (cj.contains("gap_b")) cfg.gap_b = cj["gap_b"];
              if (cj.contains("restarts")) cfg.restarts = cj["restarts"];
              if (cj.contains("seed")) cfg.seed = cj["seed"];
              if (cj.contains("target")) cfg.target = cj["target"];
              return run_analysis(cfg, X).dump();
          },
          py::arg("config_json"), py::arg("X"));
}
