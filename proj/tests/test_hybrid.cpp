#include <gtest/gtest.h>

#include <random>

#include "ctaclust/hybrid.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ctaclust;

TEST(Hybrid, TwoMiddleClustersMergeOnce) {
    auto pts = Matrix::from_rows({{0}, {1}, {10}, {11}});
    auto h = efficient_agglomerative(pts, 2, Linkage::average);
    EXPECT_EQ(h.middle.k, 2u);
    ASSERT_EQ(h.hierarchy.merges.size(), 1u);
    EXPECT_NEAR(h.hierarchy.merges[0].height, 10.0, 1e-12);
    EXPECT_EQ(h.hierarchy.merges[0].size, 4u);
    EXPECT_EQ(h.hierarchy.leaf_sizes, (std::vector<std::size_t>{2, 2}));
    auto two = cut_hybrid(h, 2);
    EXPECT_TRUE(oracle::same_partition(two.labels, {0, 0, 1, 1}));
    EXPECT_EQ(two.provenance, Provenance::hybrid_cut);
    EXPECT_EQ(cut_hybrid(h, 1).n_clusters, 1u);
}

TEST(Hybrid, CentroidLinkageIsRejected) {
    auto pts = Matrix::from_rows({{0}, {1}, {10}});
    EXPECT_EQ(testutil::error_code_of([&] { efficient_agglomerative(pts, 2, Linkage::centroid); }),
              ErrorCode::CentroidLinkageNotApplicable);
}

TEST(Hybrid, MiddleSizeBounds) {
    auto pts = Matrix::from_rows({{0}, {1}, {10}});
    EXPECT_EQ(testutil::error_code_of([&] { efficient_agglomerative(pts, 1, Linkage::ward); }), ErrorCode::KTooLarge);
    EXPECT_EQ(testutil::error_code_of([&] { efficient_agglomerative(pts, 4, Linkage::ward); }), ErrorCode::KTooLarge);
}

TEST(Hybrid, CutsPartitionEveryItem) {
    std::mt19937_64 rng(12);
    auto pts = Matrix::from_rows(oracle::random_points(rng, 30, 2));
    for (auto l : {Linkage::ward, Linkage::single, Linkage::complete, Linkage::average}) {
        auto h = efficient_agglomerative(pts, 8, l);
        EXPECT_EQ(h.hierarchy.merges.size(), 7u);
        for (std::size_t c = 1; c <= 8; ++c) {
            auto f = cut_hybrid(h, c);
            EXPECT_EQ(f.labels.size(), 30u);
            EXPECT_EQ(f.n_clusters, c);
            // items sharing a middle cluster always share a final cluster
            for (std::size_t i = 0; i < 30; ++i) {
                for (std::size_t j = 0; j < 30; ++j) {
                    if (h.middle.labels[i] == h.middle.labels[j]) {
                        EXPECT_EQ(f.labels[i], f.labels[j]);
                    }
                }
            }
        }
        EXPECT_EQ(testutil::error_code_of([&] { cut_hybrid(h, 9); }), ErrorCode::InvalidCut);
    }
}

TEST(Hybrid, SingletonMiddleLevelReducesToAgnes) {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(3, 15)(rng);
        auto pts = Matrix::from_rows(oracle::random_points(rng, n, 2));
        KMeansOptions o;
        o.seed = rng();
        for (auto l : {Linkage::ward, Linkage::single, Linkage::complete, Linkage::average}) {
            auto h = efficient_agglomerative(pts, n, l, o);
            auto plain = agnes(pairwise_distances(pts, Metric::euclidean), l);
            for (std::size_t c = 1; c <= n; ++c)
                EXPECT_TRUE(oracle::same_partition(cut_hybrid(h, c).labels, cut_dendrogram(plain, c).labels));
        }
    }
}
