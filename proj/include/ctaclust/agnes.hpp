#ifndef CTACLUST_AGNES_HPP
#define CTACLUST_AGNES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "similarity.hpp"

namespace ctaclust {

enum class Linkage { ward, single, complete, average, centroid };

inline const char* to_string(Linkage l) {
    switch (l) {
    case Linkage::ward: return "ward";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    case Linkage::centroid: return "centroid";
    }
    return "?";
}

struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0;

    friend bool operator==(const Merge&, const Merge&) = default;
};

/// Leaves are 0..n-1; the node created by merge m has id n + m.
struct Dendrogram {
    std::size_t n_leaves = 0;
    std::vector<std::size_t> leaf_sizes; // items represented by each leaf (1 for plain AGNES)
    std::vector<Merge> merges;
};

enum class Provenance { kmeans, agnes_cut, hybrid_cut };

struct FlatClustering {
    std::vector<std::size_t> labels;
    std::size_t n_clusters = 0;
    Provenance provenance = Provenance::kmeans;
};

/// Renumbers labels densely in order of first appearance.
inline FlatClustering make_flat(std::span<const std::size_t> labels, Provenance provenance) {
    FlatClustering out;
    out.provenance = provenance;
    std::vector<std::size_t> remap;
    for (auto l : labels) {
        if (l >= remap.size()) {
            remap.resize(l + 1, std::numeric_limits<std::size_t>::max());
        }
        if (remap[l] == std::numeric_limits<std::size_t>::max()) {
            remap[l] = out.n_clusters++;
        }
        out.labels.push_back(remap[l]);
    }
    return out;
}

struct AgnesStop {
    std::size_t clusters = 1;          // stop once this many clusters remain
    std::optional<double> max_height;  // or once the closest pair is farther than this
};

/// Lance-Williams update of d(i ∪ j, k).
inline double lance_williams(Linkage linkage, double d_ik, double d_jk, double d_ij, double n_i,
                             double n_j, double n_k) {
    switch (linkage) {
    case Linkage::single:
        return std::min(d_ik, d_jk); // (1/2, 1/2, 0, -1/2)
    case Linkage::complete:
        return std::max(d_ik, d_jk); // (1/2, 1/2, 0, +1/2)
    case Linkage::average:
        return (n_i * d_ik + n_j * d_jk) / (n_i + n_j);
    case Linkage::ward: {
        double t = ((n_i + n_k) * d_ik * d_ik + (n_j + n_k) * d_jk * d_jk - n_k * d_ij * d_ij)
                   / (n_i + n_j + n_k);
        return std::sqrt(std::max(0.0, t));
    }
    case Linkage::centroid: {
        double s = n_i + n_j;
        double t = (n_i * d_ik * d_ik + n_j * d_jk * d_jk) / s - n_i * n_j * d_ij * d_ij / (s * s);
        return std::sqrt(std::max(0.0, t));
    }
    }
    return 0.0;
}

/// Agglomerative clustering over a square distance matrix. Each step scans active slot pairs
/// (i < j) for the strict minimum, so the lowest (i, j) wins ties; the merged cluster takes
/// slot i. `leaf_sizes` gives the cardinality of each starting cluster (all 1 when empty).
inline Dendrogram agnes(const Matrix& dist, Linkage linkage, AgnesStop stop = {},
                        std::span<const std::size_t> leaf_sizes = {}) {
    const std::size_t n = dist.rows();
    if (dist.cols() != n) {
        fail(ErrorCode::DimensionMismatch, "distance matrix must be square");
    }
    if (n < 2) {
        fail(ErrorCode::InvalidArgument, "agglomerative clustering needs at least two items");
    }
    if (stop.clusters < 1 || stop.clusters > n) {
        fail(ErrorCode::InvalidStop, "stop must lie in [1, " + std::to_string(n) + "]");
    }
    if (!leaf_sizes.empty() && leaf_sizes.size() != n) {
        fail(ErrorCode::DimensionMismatch, "leaf_sizes length differs from item count");
    }

    Dendrogram tree;
    tree.n_leaves = n;
    tree.leaf_sizes = leaf_sizes.empty() ? std::vector<std::size_t>(n, 1)
                                         : std::vector<std::size_t>(leaf_sizes.begin(), leaf_sizes.end());

    Matrix d = dist;
    std::vector<std::size_t> node(n);
    std::iota(node.begin(), node.end(), 0);
    std::vector<std::size_t> size = tree.leaf_sizes;
    std::vector<bool> active(n, true);
    std::size_t remaining = n;

    while (remaining > stop.clusters) {
        double least = std::numeric_limits<double>::infinity();
        std::size_t row = 0, col = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && (!found || d(i, j) < least)) {
                    least = d(i, j);
                    row = i;
                    col = j;
                    found = true;
                }
            }
        }
        if (stop.max_height && least > *stop.max_height) {
            break;
        }

        const double n_i = static_cast<double>(size[row]);
        const double n_j = static_cast<double>(size[col]);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == row || k == col) continue;
            double v = lance_williams(linkage, d(row, k), d(col, k), least, n_i, n_j,
                                      static_cast<double>(size[k]));
            d(row, k) = v;
            d(k, row) = v;
        }
        tree.merges.push_back({node[row], node[col], least, size[row] + size[col]});
        node[row] = n + tree.merges.size() - 1;
        size[row] += size[col];
        active[col] = false;
        --remaining;
    }
    return tree;
}

inline Dendrogram agnes(const DistanceMatrix& dist, Linkage linkage, AgnesStop stop = {}) {
    return agnes(dist.d, linkage, stop);
}

/// Leaf labels after undoing the last n_clusters - 1 merges of a full hierarchy (or keeping
/// the first n_leaves - n_clusters merges of a partial one).
inline FlatClustering cut_dendrogram(const Dendrogram& tree, std::size_t n_clusters,
                                     Provenance provenance = Provenance::agnes_cut) {
    const std::size_t n = tree.n_leaves;
    if (n_clusters < 1 || n_clusters > n || n - n_clusters > tree.merges.size()) {
        fail(ErrorCode::InvalidCut, "cannot cut a " + std::to_string(n) + "-leaf tree with "
                                        + std::to_string(tree.merges.size()) + " merges into "
                                        + std::to_string(n_clusters) + " clusters");
    }
    // union-find over leaves and internal nodes
    std::vector<std::size_t> parent(n + tree.merges.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t m = 0; m < n - n_clusters; ++m) {
        parent[find(tree.merges[m].left)] = n + m;
        parent[find(tree.merges[m].right)] = n + m;
    }
    std::vector<std::size_t> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        roots[i] = find(i);
    }
    return make_flat(roots, provenance);
}

} // namespace ctaclust

#endif
