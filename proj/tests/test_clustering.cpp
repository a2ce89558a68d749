#include <algorithm>
#include <random>

#include <doctest.h>

#include "municlust/clustering.hpp"
#include "oracles.hpp"

using namespace municlust;

namespace {

FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t p, double lo = -5.0,
                            double hi = 5.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<std::vector<double>> rows(n, std::vector<double>(p));
    for (auto& r : rows)
        for (auto& v : r) v = u(rng);
    return FeatureMatrix::from_rows(rows);
}

}  // namespace

TEST_CASE("kmeans separates the two obvious groups") {
    const auto X = FeatureMatrix::from_rows({{0, 0}, {0, 1}, {10, 0}, {10, 1}});
    const auto result = kmeans(X, {2, Metric::Euclidean, 100, 10, 42, 1e-8});
    CHECK(result.assignment.labels[0] == result.assignment.labels[1]);
    CHECK(result.assignment.labels[2] == result.assignment.labels[3]);
    CHECK(result.assignment.labels[0] != result.assignment.labels[2]);
    CHECK(result.objective == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& c : result.centroids) CHECK(c[1] == doctest::Approx(0.5));
}

TEST_CASE("kmeans k=1 and k=n degenerate cases") {
    const auto X = FeatureMatrix::from_rows({{0.0, 2.0}, {2.0, 0.0}, {4.0, 4.0}});
    const auto one = kmeans(X, {1, Metric::Euclidean, 100, 1, 5, 1e-8});
    CHECK(one.centroids[0][0] == doctest::Approx(2.0));
    CHECK(one.centroids[0][1] == doctest::Approx(2.0));
    double tss = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        tss += (X(i, 0) - 2.0) * (X(i, 0) - 2.0) + (X(i, 1) - 2.0) * (X(i, 1) - 2.0);
    CHECK(one.objective == doctest::Approx(tss));

    const auto each = kmeans(X, {3, Metric::Euclidean, 100, 25, 5, 1e-8});
    CHECK(each.objective == doctest::Approx(0.0));
}

TEST_CASE("kmeans objective trace is non-increasing for euclidean runs") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        const auto X = random_matrix(rng, 30, 3);
        const auto result = kmeans(X, {4, Metric::Euclidean, 100, 3, static_cast<std::uint64_t>(t), 1e-8});
        for (std::size_t i = 1; i < result.objective_trace.size(); ++i)
            CHECK(result.objective_trace[i] <= result.objective_trace[i - 1] + 1e-9);
    }
}

TEST_CASE("kmeans with many restarts reaches the exhaustive optimum") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 5 + static_cast<std::size_t>(t % 4);
        const auto X = random_matrix(rng, n, 2);
        for (int k : {2, 3}) {
            const auto result =
                kmeans(X, {k, Metric::Euclidean, 100, 50, static_cast<std::uint64_t>(t), 1e-8});
            const double best = oracle::exhaustive_kmeans_minimum(X, k);
            CHECK(result.objective == doctest::Approx(best).epsilon(1e-9));
        }
    }
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
    std::mt19937_64 rng(57);
    const auto X = random_matrix(rng, 25, 3);
    for (Metric m : {Metric::Euclidean, Metric::Manhattan, Metric::Canberra}) {
        const auto a = kmeans(X, {3, m, 100, 5, 99, 1e-8});
        const auto b = kmeans(X, {3, m, 100, 5, 99, 1e-8});
        CHECK(a.assignment.labels == b.assignment.labels);
        CHECK(a.objective == b.objective);
    }
}

TEST_CASE("kmeans precondition failures") {
    const auto X = FeatureMatrix::from_rows({{0.0}, {1.0}});
    CHECK_THROWS_AS(kmeans(X, {3, Metric::Euclidean, 100, 1, 0, 1e-8}), InvalidInput);
    CHECK_THROWS_AS(kmeans(X, {1, Metric::Euclidean, 100, 0, 0, 1e-8}), InvalidInput);
}

TEST_CASE("kmeans_objective hand values and oracle") {
    const auto X = FeatureMatrix::from_rows({{0.0, 0.0}, {2.0, 0.0}});
    ClusterAssignment both{{0, 0}, 1, "kmeans", {}};
    CHECK(kmeans_objective(X, both, {{1.0, 0.0}}) == doctest::Approx(2.0));
    ClusterAssignment own{{0, 1}, 2, "kmeans", {}};
    CHECK(kmeans_objective(X, own, {{0.0, 0.0}, {2.0, 0.0}}) == 0.0);

    std::mt19937_64 rng(13);
    const auto Y = random_matrix(rng, 8, 2);
    std::uniform_int_distribution<int> lab(0, 2);
    std::vector<int> labels(8);
    labels[0] = 0;
    labels[1] = 1;
    labels[2] = 2;  // keep all clusters occupied
    for (std::size_t i = 3; i < 8; ++i) labels[i] = lab(rng);
    std::vector<std::vector<double>> centroids(3, std::vector<double>(2));
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (auto& c : centroids)
        for (auto& v : c) v = u(rng);
    ClusterAssignment a{labels, 3, "kmeans", {}};
    CHECK(kmeans_objective(Y, a, centroids) ==
          doctest::Approx(oracle::naive_ssw(Y, labels, centroids)).epsilon(1e-12));

    ClusterAssignment bad{{0, 5}, 2, "kmeans", {}};
    CHECK_THROWS_AS(kmeans_objective(X, bad, {{0.0, 0.0}, {1.0, 0.0}}), InvalidInput);
}

TEST_CASE("hierarchical hand-traced merges on a line") {
    const auto X = FeatureMatrix::from_rows({{0.0}, {1.0}, {10.0}});
    const auto D = distance_matrix(X, Metric::Manhattan);

    const auto single = hierarchical(D, Linkage::Single);
    REQUIRE(single.merges.size() == 2);
    CHECK(single.merges[0].height == doctest::Approx(1.0));
    CHECK(single.merges[1].height == doctest::Approx(9.0));

    const auto complete = hierarchical(D, Linkage::Complete);
    CHECK(complete.merges[0].height == doctest::Approx(1.0));
    CHECK(complete.merges[1].height == doctest::Approx(10.0));
}

TEST_CASE("hierarchical with two points") {
    const auto X = FeatureMatrix::from_rows({{0.0}, {4.0}});
    const auto D = distance_matrix(X, Metric::Euclidean);
    const auto d = hierarchical(D, Linkage::Single);
    REQUIRE(d.merges.size() == 1);
    CHECK(d.merges[0].height == doctest::Approx(4.0));
    CHECK(d.merges[0].size == 2);
}

TEST_CASE("dendrogram heights are non-decreasing for both linkages") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 20; ++t) {
        const auto X = random_matrix(rng, 15, 2);
        const auto D = distance_matrix(X, Metric::Euclidean);
        for (Linkage l : {Linkage::Single, Linkage::Complete}) {
            const auto d = hierarchical(D, l);
            for (std::size_t i = 1; i < d.merges.size(); ++i)
                CHECK(d.merges[i].height >= d.merges[i - 1].height);
        }
    }
}

TEST_CASE("single linkage merge heights equal sorted MST edge weights") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 20; ++t) {
        const auto X = random_matrix(rng, 20, 3);
        const auto D = distance_matrix(X, Metric::Euclidean);
        const auto dendro = hierarchical(D, Linkage::Single);
        const auto mst = oracle::mst_edge_weights(oracle::naive_distance_matrix(X, Metric::Euclidean));
        REQUIRE(dendro.merges.size() == mst.size());
        for (std::size_t i = 0; i < mst.size(); ++i)
            CHECK(dendro.merges[i].height == mst[i]);
    }
}

TEST_CASE("cut_dendrogram hand-traced and degenerate cuts") {
    const auto X = FeatureMatrix::from_rows({{0.0}, {1.0}, {10.0}});
    const auto dendro = hierarchical(distance_matrix(X, Metric::Manhattan), Linkage::Single);

    const auto two = cut_dendrogram(dendro, 2);
    CHECK(two.labels[0] == two.labels[1]);
    CHECK(two.labels[0] != two.labels[2]);

    const auto one = cut_dendrogram(dendro, 1);
    CHECK(one.labels == std::vector<int>{0, 0, 0});

    const auto all = cut_dendrogram(dendro, 3);
    CHECK(all.k == 3);
    std::vector<int> sorted(all.labels);
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(cut_dendrogram(dendro, 0), InvalidInput);
    CHECK_THROWS_AS(cut_dendrogram(dendro, 4), InvalidInput);
}

TEST_CASE("k-cut refines the (k-1)-cut") {
    std::mt19937_64 rng(5);
    const auto X = random_matrix(rng, 18, 2);
    const auto dendro = hierarchical(distance_matrix(X, Metric::Euclidean), Linkage::Complete);
    for (int k = 2; k <= 18; ++k) {
        const auto fine = cut_dendrogram(dendro, k);
        const auto coarse = cut_dendrogram(dendro, k - 1);
        // all members of one fine cluster share one coarse label
        for (const auto& cluster : fine.members()) {
            for (std::size_t m : cluster)
                CHECK(coarse.labels[m] == coarse.labels[cluster.front()]);
        }
    }
}

TEST_CASE("dbscan separates triads and flags the stray point") {
    std::vector<std::vector<double>> rows = {
        {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0},        // triad A
        {100.0, 0.0}, {101.0, 0.0}, {100.0, 1.0},  // triad B
        {50.0, 0.0}};                              // stray
    const auto D = distance_matrix(FeatureMatrix::from_rows(rows), Metric::Euclidean);
    const auto a = dbscan(D, {2.0, 3, Metric::Euclidean});
    CHECK(a.k == 2);
    CHECK(a.labels[0] == a.labels[1]);
    CHECK(a.labels[1] == a.labels[2]);
    CHECK(a.labels[3] == a.labels[4]);
    CHECK(a.labels[0] != a.labels[3]);
    CHECK(a.labels[6] == kNoise);
    CHECK(a.noise_count() == 1);
}

TEST_CASE("dbscan trivial regimes") {
    std::mt19937_64 rng(301);
    const auto X = random_matrix(rng, 10, 2);
    const auto D = distance_matrix(X, Metric::Euclidean);

    const auto everything = dbscan(D, {1e6, 1, Metric::Euclidean});
    CHECK(everything.k == 1);
    CHECK(everything.noise_count() == 0);

    const auto nothing = dbscan(D, {1e-9, 2, Metric::Euclidean});
    CHECK(nothing.k == 0);
    CHECK(nothing.noise_count() == 10);
}

TEST_CASE("dbscan matches the transitive-closure oracle") {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> eps_pick(0.5, 3.0);
    std::uniform_int_distribution<int> pts_pick(2, 5);
    for (int t = 0; t < 25; ++t) {
        const auto X = random_matrix(rng, 25, 2);
        const auto D = distance_matrix(X, Metric::Euclidean);
        const double eps = eps_pick(rng);
        const int min_pts = pts_pick(rng);
        const auto got = dbscan(D, {eps, min_pts, Metric::Euclidean});
        const auto want = oracle::naive_dbscan(oracle::naive_distance_matrix(X, Metric::Euclidean),
                                               eps, min_pts);
        CHECK(got.k == want.k);
        CHECK(oracle::same_partition(got.labels, want.labels));
    }
}

TEST_CASE("dbscan is permutation invariant up to relabeling") {
    std::mt19937_64 rng(404);
    const auto X = random_matrix(rng, 20, 2);
    const auto base = dbscan(distance_matrix(X, Metric::Euclidean), {1.5, 3, Metric::Euclidean});

    std::vector<std::size_t> perm(20);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> rows;
    for (std::size_t i : perm)
        rows.push_back({X(i, 0), X(i, 1)});
    const auto shuffled =
        dbscan(distance_matrix(FeatureMatrix::from_rows(rows), Metric::Euclidean),
               {1.5, 3, Metric::Euclidean});

    std::vector<int> unshuffled(20);
    for (std::size_t i = 0; i < 20; ++i) unshuffled[perm[i]] = shuffled.labels[i];
    CHECK(oracle::same_partition(base.labels, unshuffled));
}
