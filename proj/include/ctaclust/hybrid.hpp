#ifndef CTACLUST_HYBRID_HPP
#define CTACLUST_HYBRID_HPP

#include <vector>

#include "agnes.hpp"
#include "error.hpp"
#include "kmeans.hpp"

namespace ctaclust {

/// K-means middle-level clusters plus the hierarchy built over them.
struct HybridResult {
    KMeansResult middle;
    Dendrogram hierarchy; // leaves are the middle-level clusters
};

/// Stage 1 partitions the points into k_mid clusters with k-means; stage 2 runs AGNES over
/// those clusters, starting from Euclidean distances between centroids and weighting the
/// Lance-Williams updates by cluster cardinality.
inline HybridResult efficient_agglomerative(const Matrix& points, std::size_t k_mid, Linkage linkage,
                                            const KMeansOptions& opts = {}) {
    if (linkage == Linkage::centroid) {
        fail(ErrorCode::CentroidLinkageNotApplicable,
             "centroid linkage is not applicable to the K-means-seeded hierarchy");
    }
    if (k_mid < 2 || k_mid > points.rows()) {
        fail(ErrorCode::KTooLarge, "k_mid must lie in [2, n]");
    }
    HybridResult res;
    res.middle = kmeans(points, k_mid, opts);
    Matrix between = pairwise_distances(res.middle.centroids, Metric::euclidean);
    auto sizes = res.middle.cluster_sizes();
    res.hierarchy = agnes(between, linkage, AgnesStop{}, sizes);
    return res;
}

inline HybridResult efficient_agglomerative(const DistanceMatrix& dist, std::size_t k_mid,
                                            Linkage linkage, const KMeansOptions& opts = {}) {
    return efficient_agglomerative(dist.d, k_mid, linkage, opts);
}

/// Cuts the hierarchy over middle-level clusters and expands the result back to items.
inline FlatClustering cut_hybrid(const HybridResult& h, std::size_t n_clusters) {
    auto leaf = cut_dendrogram(h.hierarchy, n_clusters, Provenance::hybrid_cut);
    std::vector<std::size_t> labels;
    labels.reserve(h.middle.labels.size());
    for (auto m : h.middle.labels) {
        labels.push_back(leaf.labels[m]);
    }
    return make_flat(labels, Provenance::hybrid_cut);
}

} // namespace ctaclust

#endif
