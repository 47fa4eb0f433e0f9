#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ctaclust/evaluate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ctaclust;

namespace {

DistanceMatrix line_dm(std::vector<double> xs) {
    DistanceMatrix d;
    d.n = xs.size();
    d.d = Matrix(d.n, d.n);
    for (std::size_t i = 0; i < d.n; ++i)
        for (std::size_t j = 0; j < d.n; ++j) d.d(i, j) = std::abs(xs[i] - xs[j]);
    return d;
}

FlatClustering flat(std::vector<std::size_t> labels, std::size_t k) { return {std::move(labels), k, Provenance::kmeans}; }

} // namespace

TEST(Silhouette, TwoTightPairs) {
    auto s = silhouette(line_dm({0, 0.1, 10, 10.1}), flat({0, 0, 1, 1}, 2));
    // outer points: a = 0.1, b = 10.05; inner points: a = 0.1, b = 9.95
    const double outer = (10.05 - 0.1) / 10.05, inner = (9.95 - 0.1) / 9.95;
    EXPECT_NEAR(outer, 0.990050, 1e-6);
    EXPECT_NEAR(s.per_point[0], outer, 1e-12);
    EXPECT_NEAR(s.per_point[1], inner, 1e-12);
    EXPECT_NEAR(s.per_point[2], inner, 1e-12);
    EXPECT_NEAR(s.per_point[3], outer, 1e-12);
    EXPECT_NEAR(s.mean, (outer + inner) / 2, 1e-12);
    EXPECT_NEAR(s.mean, 0.99, 1e-4);
}

TEST(Silhouette, SingletonScoresZero) {
    auto s = silhouette(line_dm({0, 1, 10}), flat({0, 0, 1}, 2));
    EXPECT_EQ(s.per_point[2], 0.0);
}

TEST(Silhouette, DegenerateClusterings) {
    auto d = line_dm({0, 1, 2});
    EXPECT_EQ(testutil::error_code_of([&] { silhouette(d, flat({0, 0, 0}, 1)); }), ErrorCode::DegenerateClustering);
    EXPECT_EQ(testutil::error_code_of([&] { silhouette(d, flat({0, 1, 2}, 3)); }), ErrorCode::DegenerateClustering);
    EXPECT_EQ(testutil::error_code_of([&] { silhouette(d, flat({0, 1}, 2)); }), ErrorCode::DimensionMismatch);
}

TEST(Silhouette, OracleAndBounds) {
    std::mt19937_64 rng(314);
    for (int t = 0; t < 100; ++t) {
        std::size_t k = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
        std::size_t n = std::uniform_int_distribution<std::size_t>(k + 1, 40)(rng);
        auto pts = oracle::random_points(rng, n, 2);
        auto table = oracle::euclid_table(pts);
        auto labels = oracle::random_labels(rng, n, k);
        DistanceMatrix d{n, Matrix::from_rows(table), Similarity::cosine, {}};
        auto s = silhouette(d, flat(labels, k));
        EXPECT_NEAR(s.mean, oracle::silhouette(table, labels, k), 1e-9);
        double sum = 0;
        for (double v : s.per_point) {
            EXPECT_GE(v, -1.0);
            EXPECT_LE(v, 1.0);
            sum += v;
        }
        EXPECT_NEAR(s.mean, sum / n, 1e-12);
    }
}

TEST(Silhouette, PermutingClusterIdsIsBitIdentical) {
    std::mt19937_64 rng(2718);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 25, k = 4;
        auto pts = oracle::random_points(rng, n, 3);
        DistanceMatrix d{n, Matrix::from_rows(oracle::euclid_table(pts)), Similarity::cosine, {}};
        auto labels = oracle::random_labels(rng, n, k);
        std::vector<std::size_t> perm{2, 0, 3, 1}, relabeled;
        for (auto l : labels) relabeled.push_back(perm[l]);
        EXPECT_EQ(silhouette(d, flat(labels, k)).mean, silhouette(d, flat(relabeled, k)).mean);
        EXPECT_EQ(davies_bouldin(Matrix::from_rows(pts), flat(labels, k)).value,
                  davies_bouldin(Matrix::from_rows(pts), flat(relabeled, k)).value);
        EXPECT_EQ(davies_bouldin_medoid(d, flat(labels, k)).value, davies_bouldin_medoid(d, flat(relabeled, k)).value);
    }
}

TEST(DaviesBouldin, HandValues) {
    auto blocks = davies_bouldin(Matrix::from_rows({{0}, {1}, {10}, {11}}), flat({0, 0, 1, 1}, 2));
    EXPECT_NEAR(blocks.value, 0.1, 1e-12);
    EXPECT_FALSE(blocks.coincident);
    EXPECT_EQ(davies_bouldin(Matrix::from_rows({{3}, {-4}}), flat({0, 1}, 2)).value, 0.0);
}

TEST(DaviesBouldin, OracleAgreement) {
    std::mt19937_64 rng(1618);
    for (int t = 0; t < 100; ++t) {
        std::size_t k = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
        std::size_t n = std::uniform_int_distribution<std::size_t>(k + 1, 40)(rng);
        auto pts = oracle::random_points(rng, n, 3);
        auto labels = oracle::random_labels(rng, n, k);
        double v = davies_bouldin(Matrix::from_rows(pts), flat(labels, k)).value;
        EXPECT_NEAR(v, oracle::davies_bouldin(pts, labels, k), 1e-9);
        EXPECT_GE(v, 0.0);
    }
}

TEST(DaviesBouldin, CoincidentCentersGiveInfinityAndWarn) {
    testutil::CaptureWarnings w;
    // both clusters are centered at 1
    auto r = davies_bouldin(Matrix::from_rows({{0}, {2}, {1}}), flat({0, 0, 1}, 2));
    EXPECT_TRUE(std::isinf(r.value));
    ASSERT_TRUE(r.coincident.has_value());
    EXPECT_FALSE(w.messages.empty());
}

TEST(DaviesBouldin, MovingAClusterAwayHelpsBothScores) {
    double prev_dbi = std::numeric_limits<double>::infinity(), prev_sil = -2;
    for (double shift : {5.0, 10.0, 20.0, 40.0}) {
        std::vector<double> xs{0, 1, 2, shift, shift + 1, shift + 2};
        auto labels = flat({0, 0, 0, 1, 1, 1}, 2);
        std::vector<std::vector<double>> rows;
        for (double x : xs) rows.push_back({x});
        double dbi = davies_bouldin(Matrix::from_rows(rows), labels).value;
        double sil = silhouette(line_dm(xs), labels).mean;
        EXPECT_LE(dbi, prev_dbi);
        EXPECT_GE(sil, prev_sil);
        prev_dbi = dbi;
        prev_sil = sil;
    }
}

TEST(DaviesBouldin, MedoidVariant) {
    // medoids are 1 and 11; scatter is mean distance to the medoid
    auto d = line_dm({0, 1, 2, 10, 11, 12});
    auto r = davies_bouldin_medoid(d, flat({0, 0, 0, 1, 1, 1}, 2));
    EXPECT_NEAR(r.value, (2.0 / 3 + 2.0 / 3) / 10.0, 1e-12);
}

TEST(Score, CombinesBoth) {
    auto d = line_dm({0, 0.1, 10, 10.1});
    auto s = score(d, flat({0, 0, 1, 1}, 2));
    EXPECT_EQ(s.n_clusters, 2u);
    EXPECT_EQ(s.per_point_silhouette.size(), 4u);
    EXPECT_NEAR(s.silhouette, ((10.05 - 0.1) / 10.05 + (9.95 - 0.1) / 9.95) / 2, 1e-12);
    EXPECT_NEAR(s.davies_bouldin, 0.1 / 10.0, 1e-12);
}
