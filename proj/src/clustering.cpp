#include "municlust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace municlust {

void ClusterAssignment::validate() const {
    if (k < 1) throw InvalidInput("ClusterAssignment: k must be >= 1");
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (int label : labels) {
        if (label == kNoise) {
            if (algorithm != "dbscan")
                throw InvalidInput("ClusterAssignment: noise label outside DBSCAN provenance");
            continue;
        }
        if (label < 0 || label >= k)
            throw InvalidInput("ClusterAssignment: label out of range");
        ++counts[static_cast<std::size_t>(label)];
    }
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] == 0)
            throw InvalidInput("ClusterAssignment: empty cluster " + std::to_string(c));
}

std::vector<std::vector<std::size_t>> ClusterAssignment::members() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != kNoise) out[static_cast<std::size_t>(labels[i])].push_back(i);
    return out;
}

std::size_t ClusterAssignment::noise_count() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
}

double kmeans_objective(const FeatureMatrix& X, const ClusterAssignment& assignment,
                        const std::vector<std::vector<double>>& centroids) {
    if (assignment.labels.size() != X.rows())
        throw InvalidInput("kmeans_objective: label count mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const int label = assignment.labels[i];
        if (label == kNoise) throw InvalidInput("kmeans_objective: noise labels not allowed");
        if (label < 0 || static_cast<std::size_t>(label) >= centroids.size())
            throw InvalidInput("kmeans_objective: label out of range");
        const auto& c = centroids[static_cast<std::size_t>(label)];
        if (c.size() != X.cols()) throw InvalidInput("kmeans_objective: centroid width mismatch");
        double s = 0.0;
        for (std::size_t j = 0; j < X.cols(); ++j) {
            const double d = X(i, j) - c[j];
            s += d * d;
        }
        total += s;
    }
    return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct SingleRun {
    std::vector<int> labels;
    std::vector<std::vector<double>> centroids;
    double objective = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

SingleRun kmeans_once(const FeatureMatrix& X, const KMeansConfig& cfg, std::uint64_t sub_seed) {
    const std::size_t n = X.rows(), p = X.cols();
    const std::size_t k = static_cast<std::size_t>(cfg.k);
    std::mt19937_64 rng(sub_seed);

    // Seed centroids at k distinct rows (partial Fisher-Yates).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    std::vector<std::vector<double>> centroids(k, std::vector<double>(p));
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < p; ++j) centroids[c][j] = X(order[c], j);

    SingleRun run;
    run.labels.assign(n, 0);
    std::vector<int> prev_labels;
    std::vector<std::size_t> counts(k, 0);

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        run.iterations = iter;

        // Assignment by the configured metric, ties to the lowest index.
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = distance(X.row(i), centroids[c], cfg.metric);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            run.labels[i] = best;
        }

        // Empty-cluster repair: reseed at the point farthest from the
        // stale centroid, pulled from a cluster that can spare it.
        std::fill(counts.begin(), counts.end(), std::size_t{0});
        for (int label : run.labels) ++counts[static_cast<std::size_t>(label)];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(run.labels[i])] < 2) continue;
                const double d = distance(X.row(i), centroids[c], cfg.metric);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far == n) continue;  // only singletons left; duplicate rows
            --counts[static_cast<std::size_t>(run.labels[far])];
            run.labels[far] = static_cast<int>(c);
            counts[c] = 1;
            for (std::size_t j = 0; j < p; ++j) centroids[c][j] = X(far, j);
        }

        // Mean update.
        double max_shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            std::vector<double> mean(p, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                if (run.labels[i] == static_cast<int>(c))
                    for (std::size_t j = 0; j < p; ++j) mean[j] += X(i, j);
            double shift = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                mean[j] /= static_cast<double>(counts[c]);
                const double d = mean[j] - centroids[c][j];
                shift += d * d;
            }
            max_shift = std::max(max_shift, std::sqrt(shift));
            centroids[c] = std::move(mean);
        }

        ClusterAssignment snapshot{run.labels, cfg.k, "kmeans", {}};
        run.trace.push_back(kmeans_objective(X, snapshot, centroids));

        if (run.labels == prev_labels || max_shift < cfg.tolerance) {
            run.converged = true;
            break;
        }
        prev_labels = run.labels;
    }

    run.centroids = centroids;
    run.objective = run.trace.empty() ? 0.0 : run.trace.back();
    return run;
}

}  // namespace

KMeansResult kmeans(const FeatureMatrix& X, const KMeansConfig& cfg) {
    if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > X.rows())
        throw InvalidInput("kmeans: k must be in [1, n]");
    if (cfg.restarts < 1) throw InvalidInput("kmeans: restarts must be >= 1");
    if (cfg.max_iterations < 1) throw InvalidInput("kmeans: max_iterations must be >= 1");
    if (cfg.tolerance < 0.0) throw InvalidInput("kmeans: tolerance must be >= 0");

    SingleRun best;
    for (int r = 0; r < cfg.restarts; ++r) {
        const std::uint64_t sub_seed =
            splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(r)));
        SingleRun run = kmeans_once(X, cfg, sub_seed);
        if (run.objective < best.objective) best = std::move(run);
    }

    KMeansResult result;
    result.assignment.labels = best.labels;
    result.assignment.k = cfg.k;
    result.assignment.algorithm = "kmeans";
    result.assignment.parameters = {{"k", std::to_string(cfg.k)},
                                    {"metric", metric_name(cfg.metric)},
                                    {"max_iterations", std::to_string(cfg.max_iterations)},
                                    {"restarts", std::to_string(cfg.restarts)},
                                    {"seed", std::to_string(cfg.seed)},
                                    {"tolerance", std::to_string(cfg.tolerance)}};
    result.assignment.validate();
    result.centroids = best.centroids;
    result.objective = best.objective;
    result.iterations_used = best.iterations;
    result.converged = best.converged;
    result.objective_trace = best.trace;
    return result;
}

Linkage linkage_from_name(const std::string& name) {
    if (name == "single") return Linkage::Single;
    if (name == "complete") return Linkage::Complete;
    throw InvalidInput("unknown linkage: " + name);
}

std::string linkage_name(Linkage l) {
    return l == Linkage::Single ? "single" : "complete";
}

Dendrogram hierarchical(const DistanceMatrix& D, Linkage linkage) {
    const std::size_t n = D.size();
    if (n < 2) throw InvalidInput("hierarchical: need at least 2 entities");

    struct Active {
        int node;          // dendrogram node id
        std::size_t size;
    };
    std::vector<Active> active;
    active.reserve(n);
    for (std::size_t i = 0; i < n; ++i) active.push_back({static_cast<int>(i), 1});

    // Working copy of inter-cluster dissimilarities, indexed by active slot.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = D(i, j);

    Dendrogram out;
    out.linkage = linkage;
    out.metric = D.metric();
    out.merges.reserve(n - 1);

    for (std::size_t step = 0; step < n - 1; ++step) {
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j)
                if (dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                }

        out.merges.push_back({active[bi].node, active[bj].node, best,
                              active[bi].size + active[bj].size});

        // Lance-Williams update for single/complete linkage.
        for (std::size_t m = 0; m < active.size(); ++m) {
            if (m == bi || m == bj) continue;
            const double d = linkage == Linkage::Single ? std::min(dist[bi][m], dist[bj][m])
                                                        : std::max(dist[bi][m], dist[bj][m]);
            dist[bi][m] = dist[m][bi] = d;
        }
        active[bi] = {static_cast<int>(n + step), active[bi].size + active[bj].size};
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return out;
}

ClusterAssignment cut_dendrogram(const Dendrogram& dendrogram, int k) {
    const std::size_t n = dendrogram.leaf_count();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw InvalidInput("cut_dendrogram: k must be in [1, n]");

    // Replay the first n-k merges; each internal node remembers its leaves.
    std::vector<int> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t step = 0; step < n - static_cast<std::size_t>(k); ++step) {
        const Merge& m = dendrogram.merges[step];
        const int node = static_cast<int>(n + step);
        parent[static_cast<std::size_t>(find(m.left))] = node;
        parent[static_cast<std::size_t>(find(m.right))] = node;
    }

    ClusterAssignment out;
    out.labels.assign(n, -1);
    out.k = k;
    out.algorithm = "hierarchical";
    out.parameters = {{"k", std::to_string(k)},
                      {"linkage", linkage_name(dendrogram.linkage)},
                      {"metric", metric_name(dendrogram.metric)}};
    std::vector<int> root_label(2 * n - 1, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int root = find(static_cast<int>(i));
        if (root_label[static_cast<std::size_t>(root)] < 0)
            root_label[static_cast<std::size_t>(root)] = next++;
        out.labels[i] = root_label[static_cast<std::size_t>(root)];
    }
    out.validate();
    return out;
}

ClusterAssignment dbscan(const DistanceMatrix& D, const DbscanConfig& cfg) {
    if (cfg.eps <= 0.0) throw InvalidInput("dbscan: eps must be > 0");
    if (cfg.min_pts < 1) throw InvalidInput("dbscan: min_pts must be >= 1");
    const std::size_t n = D.size();

    // Core test counts the point itself.
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        int neighbors = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (D(i, j) <= cfg.eps) ++neighbors;
        core[i] = neighbors >= cfg.min_pts;
    }

    // Connected components of core points under eps-adjacency.
    std::vector<int> comp(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!core[i] || comp[i] >= 0) continue;
        std::vector<std::size_t> stack{i};
        comp[i] = next;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (core[v] && comp[v] < 0 && D(u, v) <= cfg.eps) {
                    comp[v] = next;
                    stack.push_back(v);
                }
        }
        ++next;
    }

    ClusterAssignment out;
    out.labels.assign(n, kNoise);
    out.algorithm = "dbscan";
    out.parameters = {{"eps", std::to_string(cfg.eps)},
                      {"min_pts", std::to_string(cfg.min_pts)},
                      {"metric", metric_name(D.metric())}};
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) {
            out.labels[i] = comp[i];
            continue;
        }
        // Border points join the lowest-indexed reachable cluster.
        int best = kNoise;
        for (std::size_t j = 0; j < n; ++j)
            if (core[j] && D(i, j) <= cfg.eps && (best == kNoise || comp[j] < best))
                best = comp[j];
        out.labels[i] = best;
    }
    out.k = next;
    if (next > 0) out.validate();
    return out;
}

}  // namespace municlust
