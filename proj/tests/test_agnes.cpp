#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ctaclust/agnes.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ctaclust;

namespace {

Matrix line_distances(std::vector<double> xs) {
    Matrix d(xs.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) d(i, j) = std::abs(xs[i] - xs[j]);
    return d;
}

} // namespace

TEST(Agnes, ThreePointsSingleAndComplete) {
    auto d = line_distances({0, 1, 10});
    auto single = agnes(d, Linkage::single);
    ASSERT_EQ(single.merges.size(), 2u);
    EXPECT_EQ(single.merges[0], (Merge{0, 1, 1.0, 2}));
    EXPECT_EQ(single.merges[1], (Merge{3, 2, 9.0, 3}));
    auto complete = agnes(d, Linkage::complete);
    EXPECT_EQ(complete.merges[1].height, 10.0);
    auto average = agnes(d, Linkage::average);
    EXPECT_EQ(average.merges[1].height, 9.5);
}

TEST(Agnes, TwoItemsOneMerge) {
    auto tree = agnes(line_distances({2, 5}), Linkage::ward);
    ASSERT_EQ(tree.merges.size(), 1u);
    EXPECT_EQ(tree.merges[0], (Merge{0, 1, 3.0, 2}));
}

TEST(Agnes, TiesTakeLowestPair) {
    // every pair at distance 1: the scan keeps (0,1), then the merged slot 0 with 2, ...
    Matrix d(4, 4, 1.0);
    for (std::size_t i = 0; i < 4; ++i) d(i, i) = 0.0;
    auto tree = agnes(d, Linkage::single);
    EXPECT_EQ(tree.merges[0].left, 0u);
    EXPECT_EQ(tree.merges[0].right, 1u);
    EXPECT_EQ(tree.merges[1].left, 4u);
    EXPECT_EQ(tree.merges[1].right, 2u);
    EXPECT_EQ(tree.merges[2].left, 5u);
    EXPECT_EQ(tree.merges[2].right, 3u);
}

TEST(Agnes, StopCountAndThreshold) {
    auto d = line_distances({0, 1, 10, 11, 30});
    auto partial = agnes(d, Linkage::single, AgnesStop{2, std::nullopt});
    EXPECT_EQ(partial.merges.size(), 3u);
    auto capped = agnes(d, Linkage::single, AgnesStop{1, 5.0});
    EXPECT_EQ(capped.merges.size(), 2u);
    for (const auto& m : capped.merges) EXPECT_LE(m.height, 5.0);
    EXPECT_EQ(testutil::error_code_of([&] { agnes(d, Linkage::single, AgnesStop{0, std::nullopt}); }), ErrorCode::InvalidStop);
    EXPECT_EQ(testutil::error_code_of([&] { agnes(d, Linkage::single, AgnesStop{6, std::nullopt}); }), ErrorCode::InvalidStop);
    EXPECT_EQ(testutil::error_code_of([&] { agnes(Matrix(2, 3), Linkage::single); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(testutil::error_code_of([&] { agnes(Matrix(1, 1), Linkage::single); }), ErrorCode::InvalidArgument);
}

TEST(Agnes, StructuralInvariants) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(2, 25)(rng);
        auto pts = oracle::random_points(rng, n, 3);
        auto d = Matrix::from_rows(oracle::euclid_table(pts));
        for (auto l : {Linkage::ward, Linkage::single, Linkage::complete, Linkage::average, Linkage::centroid}) {
            auto tree = agnes(d, l);
            ASSERT_EQ(tree.merges.size(), n - 1);
            std::set<std::size_t> used;
            std::vector<std::size_t> size(n, 1);
            for (std::size_t m = 0; m < tree.merges.size(); ++m) {
                const auto& mg = tree.merges[m];
                EXPECT_TRUE(used.insert(mg.left).second);
                EXPECT_TRUE(used.insert(mg.right).second);
                EXPECT_LT(mg.left, n + m);
                EXPECT_LT(mg.right, n + m);
                EXPECT_EQ(mg.size, size[mg.left] + size[mg.right]);
                size.push_back(mg.size);
                EXPECT_GE(mg.height, 0.0);
                if (m > 0 && l != Linkage::centroid) {
                    EXPECT_GE(mg.height, tree.merges[m - 1].height - 1e-12) << to_string(l);
                }
            }
        }
    }
}

TEST(Agnes, LeafSizesWeightAverageLinkage) {
    // leaves of sizes 3,1 merge; the distance to the third leaf is the size-weighted mean
    Matrix d = Matrix::from_rows({{0, 1, 4}, {1, 0, 8}, {4, 8, 0}});
    std::vector<std::size_t> sizes{3, 1, 1};
    auto tree = agnes(d, Linkage::average, AgnesStop{}, sizes);
    EXPECT_EQ(tree.leaf_sizes, sizes);
    EXPECT_EQ(tree.merges[0].size, 4u);
    EXPECT_EQ(tree.merges[1].height, (3 * 4.0 + 1 * 8.0) / 4.0);
    EXPECT_EQ(tree.merges[1].size, 5u);
}

TEST(LanceWilliams, Coefficients) {
    EXPECT_EQ(lance_williams(Linkage::single, 3, 5, 1, 1, 1, 1), 3);
    EXPECT_EQ(lance_williams(Linkage::complete, 3, 5, 1, 1, 1, 1), 5);
    EXPECT_EQ(lance_williams(Linkage::average, 3, 5, 1, 1, 3, 1), 4.5);
    // three collinear points 0, 1, 4: Ward distance of {0,1} to {4} is sqrt(2*2*1/3) * 3.5
    EXPECT_NEAR(lance_williams(Linkage::ward, 4, 3, 1, 1, 1, 1), std::sqrt(4.0 / 3.0) * 3.5, 1e-12);
    EXPECT_NEAR(lance_williams(Linkage::centroid, 4, 3, 1, 1, 1, 1), 3.5, 1e-12);
}

TEST(Cut, LevelsAndErrors) {
    auto tree = agnes(line_distances({0, 1, 10}), Linkage::single);
    auto two = cut_dendrogram(tree, 2);
    EXPECT_EQ(two.labels, (std::vector<std::size_t>{0, 0, 1}));
    EXPECT_EQ(two.n_clusters, 2u);
    EXPECT_EQ(two.provenance, Provenance::agnes_cut);
    EXPECT_EQ(cut_dendrogram(tree, 1).labels, (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(cut_dendrogram(tree, 3).labels, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(testutil::error_code_of([&] { cut_dendrogram(tree, 0); }), ErrorCode::InvalidCut);
    EXPECT_EQ(testutil::error_code_of([&] { cut_dendrogram(tree, 4); }), ErrorCode::InvalidCut);
    auto partial = agnes(line_distances({0, 1, 10, 11}), Linkage::single, AgnesStop{3, std::nullopt});
    EXPECT_EQ(cut_dendrogram(partial, 3).n_clusters, 3u);
    EXPECT_EQ(testutil::error_code_of([&] { cut_dendrogram(partial, 2); }), ErrorCode::InvalidCut);
}

TEST(Cut, MakeFlatRelabelsByFirstAppearance) {
    auto f = make_flat(std::vector<std::size_t>{7, 7, 2, 9, 2}, Provenance::kmeans);
    EXPECT_EQ(f.labels, (std::vector<std::size_t>{0, 0, 1, 2, 1}));
    EXPECT_EQ(f.n_clusters, 3u);
}
