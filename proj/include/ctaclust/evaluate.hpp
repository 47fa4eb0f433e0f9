#ifndef CTACLUST_EVALUATE_HPP
#define CTACLUST_EVALUATE_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "agnes.hpp"
#include "error.hpp"
#include "similarity.hpp"

namespace ctaclust {

struct SilhouetteResult {
    double mean = 0.0;
    std::vector<double> per_point;
};

struct DaviesBouldinResult {
    double value = 0.0; // +inf when two cluster centers coincide
    std::optional<std::pair<std::size_t, std::size_t>> coincident;
};

struct ValidityScores {
    double silhouette = 0.0;
    double davies_bouldin = 0.0;
    std::size_t n_clusters = 0;
    std::vector<double> per_point_silhouette;
};

namespace detail {

inline void check_labels(std::size_t n, const FlatClustering& c) {
    if (c.labels.size() != n) {
        fail(ErrorCode::DimensionMismatch, "label count differs from point count");
    }
    for (auto l : c.labels) {
        if (l >= c.n_clusters) {
            fail(ErrorCode::InvalidArgument, "label outside [0, n_clusters)");
        }
    }
}

inline std::vector<std::vector<std::size_t>> members_of(const FlatClustering& c) {
    std::vector<std::vector<std::size_t>> m(c.n_clusters);
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        m[c.labels[i]].push_back(i);
    }
    return m;
}

inline DaviesBouldinResult dbi_from(const std::vector<double>& scatter, const Matrix& between) {
    const std::size_t k = scatter.size();
    DaviesBouldinResult out;
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            double m = between(i, j);
            if (m == 0.0) {
                if (!out.coincident) {
                    out.coincident = std::minmax(i, j);
                }
                worst = std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, (scatter[i] + scatter[j]) / m);
        }
        total += worst;
    }
    out.value = total / static_cast<double>(k);
    if (out.coincident) {
        diag::warn("Davies-Bouldin: clusters " + std::to_string(out.coincident->first) + " and "
                   + std::to_string(out.coincident->second) + " have coincident centers");
    }
    return out;
}

} // namespace detail

/// s(i) = (b - a) / max(a, b); members of singleton clusters score 0.
inline SilhouetteResult silhouette(const DistanceMatrix& dist, const FlatClustering& c) {
    const std::size_t n = dist.n;
    detail::check_labels(n, c);
    if (c.n_clusters < 2 || c.n_clusters >= n) {
        fail(ErrorCode::DegenerateClustering, "silhouette needs 2 <= clusters <= n - 1, got "
                                                  + std::to_string(c.n_clusters));
    }
    std::vector<std::size_t> count(c.n_clusters, 0);
    for (auto l : c.labels) {
        ++count[l];
    }
    SilhouetteResult out;
    out.per_point.resize(n);
    std::vector<double> sums(c.n_clusters);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = c.labels[i];
        if (count[own] == 1) {
            out.per_point[i] = 0.0;
            continue;
        }
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sums[c.labels[j]] += dist(i, j);
            }
        }
        const double a = sums[own] / static_cast<double>(count[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < c.n_clusters; ++k) {
            if (k != own) {
                b = std::min(b, sums[k] / static_cast<double>(count[k]));
            }
        }
        const double m = std::max(a, b);
        out.per_point[i] = m > 0.0 ? (b - a) / m : 0.0;
    }
    double total = 0.0;
    for (double s : out.per_point) {
        total += s;
    }
    out.mean = total / static_cast<double>(n);
    return out;
}

/// Davies-Bouldin index in a point space: centers are arithmetic means, scatter is the mean
/// metric distance of members to their center.
inline DaviesBouldinResult davies_bouldin(const Matrix& points, const FlatClustering& labels,
                                          Metric metric = Metric::euclidean, double p = 2.0) {
    detail::check_labels(points.rows(), labels);
    // first-appearance numbering fixes the summation order, so permuted ids give identical bits
    const FlatClustering c = make_flat(labels.labels, labels.provenance);
    if (c.n_clusters < 2) {
        fail(ErrorCode::DegenerateClustering, "Davies-Bouldin needs at least two clusters");
    }
    auto members = detail::members_of(c);
    Matrix centers(c.n_clusters, points.cols());
    for (std::size_t k = 0; k < c.n_clusters; ++k) {
        if (members[k].empty()) {
            fail(ErrorCode::DegenerateClustering, "empty cluster " + std::to_string(k));
        }
        auto ck = centers.row(k);
        for (auto i : members[k]) {
            auto x = points.row(i);
            for (std::size_t d = 0; d < x.size(); ++d) ck[d] += x[d];
        }
        for (auto& v : ck) v /= static_cast<double>(members[k].size());
    }
    std::vector<double> scatter(c.n_clusters, 0.0);
    for (std::size_t k = 0; k < c.n_clusters; ++k) {
        for (auto i : members[k]) {
            scatter[k] += metric_distance(points.row(i), centers.row(k), metric, p);
        }
        scatter[k] /= static_cast<double>(members[k].size());
    }
    return detail::dbi_from(scatter, pairwise_distances(centers, metric, p));
}

/// Davies-Bouldin index in document-distance space, using each cluster's medoid (the member
/// with the smallest summed distance to the rest, lowest index on ties) as its center.
inline DaviesBouldinResult davies_bouldin_medoid(const DistanceMatrix& dist, const FlatClustering& labels) {
    detail::check_labels(dist.n, labels);
    const FlatClustering c = make_flat(labels.labels, labels.provenance);
    if (c.n_clusters < 2) {
        fail(ErrorCode::DegenerateClustering, "Davies-Bouldin needs at least two clusters");
    }
    auto members = detail::members_of(c);
    std::vector<std::size_t> medoid(c.n_clusters);
    std::vector<double> scatter(c.n_clusters, 0.0);
    for (std::size_t k = 0; k < c.n_clusters; ++k) {
        if (members[k].empty()) {
            fail(ErrorCode::DegenerateClustering, "empty cluster " + std::to_string(k));
        }
        double best = std::numeric_limits<double>::infinity();
        for (auto i : members[k]) {
            double s = 0.0;
            for (auto j : members[k]) s += dist(i, j);
            if (s < best) {
                best = s;
                medoid[k] = i;
            }
        }
        scatter[k] = best / static_cast<double>(members[k].size());
    }
    Matrix between(c.n_clusters, c.n_clusters);
    for (std::size_t i = 0; i < c.n_clusters; ++i) {
        for (std::size_t j = 0; j < c.n_clusters; ++j) {
            between(i, j) = dist(medoid[i], medoid[j]);
        }
    }
    return detail::dbi_from(scatter, between);
}

/// Silhouette and medoid Davies-Bouldin against a document distance matrix.
inline ValidityScores score(const DistanceMatrix& dist, const FlatClustering& c) {
    auto s = silhouette(dist, c);
    ValidityScores out;
    out.silhouette = s.mean;
    out.per_point_silhouette = std::move(s.per_point);
    out.davies_bouldin = davies_bouldin_medoid(dist, c).value;
    out.n_clusters = c.n_clusters;
    return out;
}

} // namespace ctaclust

#endif
