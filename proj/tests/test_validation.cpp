#include <cmath>
#include <random>

#include <doctest.h>

#include "municlust/validation.hpp"
#include "oracles.hpp"

using namespace municlust;

namespace {

ClusterAssignment labels_of(std::vector<int> labels, int k, const std::string& algo = "kmeans") {
    return ClusterAssignment{std::move(labels), k, algo, {}};
}

FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t p) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(p));
    for (auto& r : rows)
        for (auto& v : r) v = u(rng);
    return FeatureMatrix::from_rows(rows);
}

std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n, int k) {
    std::vector<int> labels(n);
    for (int c = 0; c < k; ++c) labels[static_cast<std::size_t>(c)] = c;
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i) labels[i] = pick(rng);
    std::shuffle(labels.begin(), labels.end(), rng);
    return labels;
}

}  // namespace

TEST_CASE("silhouette on two far-apart pairs is close to 1") {
    const auto X = FeatureMatrix::from_rows({{0, 0}, {0, 1}, {100, 0}, {100, 1}});
    const auto D = distance_matrix(X, Metric::Euclidean);
    const auto r = silhouette(D, labels_of({0, 0, 1, 1}, 2));
    for (double s : r.per_point) CHECK(s == doctest::Approx(0.99).epsilon(1e-3));
    CHECK(r.overall == doctest::Approx(0.99).epsilon(1e-3));
    CHECK(r.per_cluster.size() == 2);
}

TEST_CASE("silhouette conventions and errors") {
    const auto X = FeatureMatrix::from_rows({{0, 0}, {0, 1}, {50, 0}});
    const auto D = distance_matrix(X, Metric::Euclidean);
    const auto r = silhouette(D, labels_of({0, 0, 1}, 2));
    CHECK(r.per_point[2] == 0.0);  // singleton

    CHECK_THROWS_AS(silhouette(D, labels_of({0, 0, 0}, 1)), InvalidInput);
    CHECK_THROWS_AS(silhouette(D, labels_of({0, 0, kNoise}, 1, "dbscan")), InvalidInput);
}

TEST_CASE("silhouette equals the per-definition oracle") {
    std::mt19937_64 rng(17);
    const auto X = random_matrix(rng, 10, 2);
    const auto D = distance_matrix(X, Metric::Euclidean);
    for (int t = 0; t < 20; ++t) {
        const int k = 2 + t % 3;
        const auto labels = random_labels(rng, 10, k);
        const auto got = silhouette(D, labels_of(labels, k));
        const auto want =
            oracle::naive_silhouette(oracle::naive_distance_matrix(X, Metric::Euclidean), labels, k);
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(got.per_point[i] == doctest::Approx(want[i]).epsilon(1e-12));
            CHECK(got.per_point[i] >= -1.0);
            CHECK(got.per_point[i] <= 1.0);
        }
    }
}

TEST_CASE("silhouette is exactly 1 for two collapsed clusters") {
    const auto X = FeatureMatrix::from_rows({{0, 0}, {0, 0}, {9, 9}, {9, 9}});
    const auto D = distance_matrix(X, Metric::Euclidean);
    CHECK(silhouette(D, labels_of({0, 0, 1, 1}, 2)).overall == 1.0);
}

TEST_CASE("paper-literal silhouette orientation is the negation") {
    std::mt19937_64 rng(29);
    const auto X = random_matrix(rng, 8, 2);
    const auto D = distance_matrix(X, Metric::Euclidean);
    const auto labels = random_labels(rng, 8, 2);
    const auto standard = silhouette(D, labels_of(labels, 2));
    const auto literal = silhouette(D, labels_of(labels, 2), SilhouetteVariant::PaperLiteral);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(literal.per_point[i] == doctest::Approx(-standard.per_point[i]));
}

TEST_CASE("pooled within dispersion hand cases and oracle") {
    const auto X = FeatureMatrix::from_rows({{0.0}, {2.0}, {7.0}});
    const auto D = distance_matrix(X, Metric::Euclidean);
    CHECK(pooled_within_dispersion(D, labels_of({0, 1, 2}, 3)) == 0.0);
    CHECK(pooled_within_dispersion(D, labels_of({0, 0, 1}, 2)) == doctest::Approx(2.0));

    std::mt19937_64 rng(41);
    const auto Y = random_matrix(rng, 12, 3);
    const auto DY = distance_matrix(Y, Metric::Euclidean);
    for (int t = 0; t < 10; ++t) {
        const int k = 2 + t % 3;
        const auto labels = random_labels(rng, 12, k);
        CHECK(pooled_within_dispersion(DY, labels_of(labels, k)) ==
              doctest::Approx(oracle::naive_pooled_w(
                                  oracle::naive_distance_matrix(Y, Metric::Euclidean), labels, k))
                  .epsilon(1e-12));
    }
}

TEST_CASE("gap statistic with a stubbed identity reference is zero") {
    std::mt19937_64 rng(53);
    const auto X = random_matrix(rng, 20, 2);
    const auto identity = [](const FeatureMatrix& data, std::uint64_t) { return data; };
    const auto gap =
        gap_statistic(X, {1, 2, 3}, 1, 7, {2, Metric::Euclidean, 100, 10, 7, 1e-8}, identity);
    for (double g : gap.gap) CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
    for (double s : gap.s) CHECK(s == 0.0);  // sd of one draw
}

TEST_CASE("gap statistic is deterministic and rejects flat columns") {
    std::mt19937_64 rng(61);
    const auto X = random_matrix(rng, 15, 2);
    const auto cfg = KMeansConfig{2, Metric::Euclidean, 100, 5, 3, 1e-8};
    const auto a = gap_statistic(X, {1, 2, 3}, 5, 11, cfg);
    const auto b = gap_statistic(X, {1, 2, 3}, 5, 11, cfg);
    CHECK(a.gap == b.gap);
    CHECK(a.s == b.s);
    for (double s : a.s) CHECK(s >= 0.0);

    const auto flat = FeatureMatrix::from_rows({{1.0, 3.0}, {2.0, 3.0}, {4.0, 3.0}}, {},
                                               {"X", "FLAT"});
    CHECK_THROWS_WITH_AS(gap_statistic(flat, {1, 2}, 2, 0, cfg),
                         doctest::Contains("FLAT"), NumericError);
}

TEST_CASE("ssw identities") {
    std::mt19937_64 rng(71);
    const auto X = random_matrix(rng, 10, 2);
    const auto all = kmeans(X, {10, Metric::Euclidean, 100, 25, 1, 1e-8});
    CHECK(ssw(X, all) == doctest::Approx(0.0));

    const auto some = kmeans(X, {3, Metric::Euclidean, 100, 10, 1, 1e-8});
    CHECK(ssw(X, some) == doctest::Approx(some.objective).epsilon(1e-12));
    CHECK(ssw(X, some) ==
          doctest::Approx(oracle::naive_ssw(X, some.assignment.labels, some.centroids))
              .epsilon(1e-12));
}

TEST_CASE("silhouette k-selection reproduces the published series") {
    CHECK(select_k_silhouette({2, 3, 4, 5}, {0.97, 0.89, 0.84, 0.72}) == 4);
    CHECK(select_k_silhouette({2, 3, 4, 5}, {0.97, 0.94, 0.86, 0.85}) == 3);
    CHECK(select_k_silhouette({2, 3, 4}, {0.5, 0.5, 0.5}) == 2);  // flat ties
    CHECK_THROWS_AS(select_k_silhouette({2}, {0.9}), InvalidInput);
    CHECK_THROWS_AS(select_k_silhouette({2, 4}, {0.9, 0.8}), InvalidInput);
}

TEST_CASE("gap k-selection rule") {
    GapResult paperish;
    paperish.k_values = {2, 3, 4, 5};
    paperish.gap = {0.717, 0.748, 0.765, 0.769};
    paperish.s = {0.01, 0.01, 0.01, 0.01};
    // 0.717 < 0.748-0.01, 0.748 < 0.765-0.01, 0.765 > 0.769-0.01 -> k=4
    const auto sel = select_k_gap(paperish);
    CHECK(sel.k == 4);
    CHECK_FALSE(sel.fallback);

    GapResult rising;
    rising.k_values = {1, 2, 3};
    rising.gap = {0.1, 0.2, 0.3};
    rising.s = {0.0, 0.0, 0.0};
    const auto fb = select_k_gap(rising);
    CHECK(fb.k == 3);
    CHECK(fb.fallback);

    GapResult immediate;
    immediate.k_values = {1, 2};
    immediate.gap = {1.0, 0.5};
    immediate.s = {0.0, 0.0};
    CHECK(select_k_gap(immediate).k == 1);
}

TEST_CASE("elbow k-selection rule") {
    CHECK(select_k_elbow({{1, 2, 3, 4}, {100.0, 20.0, 15.0, 12.0}}) == 2);
    CHECK(select_k_elbow({{1, 2, 3, 4}, {40.0, 30.0, 20.0, 10.0}}) == 2);  // linear, tie rule
    CHECK_THROWS_AS(select_k_elbow({{1, 2}, {5.0, 1.0}}), InvalidInput);
}

TEST_CASE("best-of-restarts ssw is non-increasing in k") {
    std::mt19937_64 rng(83);
    const auto X = random_matrix(rng, 30, 2);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 6; ++k) {
        const auto r = kmeans(X, {k, Metric::Euclidean, 100, 25, 9, 1e-8});
        CHECK(ssw(X, r) <= prev + 1e-9);
        prev = ssw(X, r);
    }
}
