#ifndef CTACLUST_KMEANS_HPP
#define CTACLUST_KMEANS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "similarity.hpp"

namespace ctaclust {

enum class InitMethod { random, kmeans_plus_plus };

struct KMeansOptions {
    Metric metric = Metric::euclidean; // assignment metric
    double p = 2.0;                    // Minkowski exponent
    std::uint64_t seed = 0;
    std::size_t max_iter = 300;
    InitMethod init = InitMethod::random;
};

struct KMeansResult {
    std::size_t k = 0;
    std::vector<std::size_t> labels;
    Matrix centroids;
    double wcss = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    /// WCSS after every centroid update, in iteration order.
    std::vector<double> wcss_history;

    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(k, 0);
        for (auto l : labels) {
            ++sizes[l];
        }
        return sizes;
    }
};

/// Sum of squared Euclidean deviations of every point from its assigned centroid.
inline double compute_wcss(const Matrix& points, const std::vector<std::size_t>& labels,
                           const Matrix& centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        auto x = points.row(i);
        auto c = centroids.row(labels[i]);
        for (std::size_t d = 0; d < x.size(); ++d) {
            double t = x[d] - c[d];
            total += t * t;
        }
    }
    return total;
}

namespace detail {

inline std::vector<std::size_t> initial_centers(const Matrix& points, std::size_t k,
                                                const KMeansOptions& opts, std::mt19937_64& rng) {
    const std::size_t n = points.rows();
    std::vector<std::size_t> chosen;
    if (opts.init == InitMethod::random) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::sample(all.begin(), all.end(), std::back_inserter(chosen), k, rng);
        return chosen;
    }
    // k-means++: D^2 weighting under the assignment metric.
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    chosen.push_back(first(rng));
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
        auto c = points.row(chosen.back());
        for (std::size_t i = 0; i < n; ++i) {
            double d = metric_distance(points.row(i), c, opts.metric, opts.p);
            nearest[i] = std::min(nearest[i], d * d);
        }
        double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
        std::size_t next;
        if (total == 0.0) {
            // all remaining points coincide with a chosen center; take the first unchosen one
            next = 0;
            while (std::find(chosen.begin(), chosen.end(), next) != chosen.end()) {
                ++next;
            }
        } else {
            std::discrete_distribution<std::size_t> pick(nearest.begin(), nearest.end());
            next = pick(rng);
        }
        chosen.push_back(next);
    }
    return chosen;
}

} // namespace detail

/// Lloyd iteration: nearest-centroid assignment under `opts.metric`, arithmetic-mean update,
/// until assignments stop changing or `max_iter` is reached. Empty clusters are reseeded with
/// the point farthest from its own centroid (taken from a cluster with at least two members).
inline KMeansResult kmeans(const Matrix& points, std::size_t k, const KMeansOptions& opts = {}) {
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();
    if (k == 0 || k > n) {
        fail(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " for " + std::to_string(n) + " points");
    }
    if (opts.metric == Metric::minkowski && !(opts.p >= 1.0)) {
        fail(ErrorCode::InvalidP, "minkowski p must be >= 1");
    }

    std::mt19937_64 rng(opts.seed);
    KMeansResult res;
    res.k = k;
    res.seed = opts.seed;
    res.centroids = Matrix(k, dim);
    auto centers = detail::initial_centers(points, k, opts, rng);
    for (std::size_t c = 0; c < k; ++c) {
        std::copy_n(points.row(centers[c]).begin(), dim, res.centroids.row(c).begin());
    }

    constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
    res.labels.assign(n, unassigned);
    std::vector<double> own_dist(n, 0.0);

    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            // keep the current label on ties; otherwise lowest centroid index wins
            std::size_t best = res.labels[i];
            double best_d = best == unassigned
                                ? std::numeric_limits<double>::infinity()
                                : metric_distance(points.row(i), res.centroids.row(best), opts.metric, opts.p);
            for (std::size_t c = 0; c < k; ++c) {
                double d = metric_distance(points.row(i), res.centroids.row(c), opts.metric, opts.p);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (best != res.labels[i]) {
                res.labels[i] = best;
                changed = true;
            }
            own_dist[i] = best_d;
        }
        if (!changed) {
            res.converged = true;
            break;
        }
        res.iterations = iter + 1;

        auto sizes = res.cluster_sizes();
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] != 0) {
                continue;
            }
            std::size_t far = unassigned;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[res.labels[i]] >= 2 && (far == unassigned || own_dist[i] > own_dist[far])) {
                    far = i;
                }
            }
            --sizes[res.labels[far]];
            res.labels[far] = c;
            sizes[c] = 1;
            own_dist[far] = 0.0;
        }

        res.centroids = Matrix(k, dim);
        for (std::size_t i = 0; i < n; ++i) {
            auto dst = res.centroids.row(res.labels[i]);
            auto src = points.row(i);
            for (std::size_t d = 0; d < dim; ++d) {
                dst[d] += src[d];
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            for (auto& v : res.centroids.row(c)) {
                v /= static_cast<double>(sizes[c]);
            }
        }
        res.wcss_history.push_back(compute_wcss(points, res.labels, res.centroids));
    }
    if (!res.converged) {
        diag::warn("k-means did not converge within " + std::to_string(opts.max_iter) + " iterations");
    }
    res.wcss = compute_wcss(points, res.labels, res.centroids);
    return res;
}

/// K-means over the rows of a document distance matrix (each document as its distance profile).
inline KMeansResult kmeans(const DistanceMatrix& dist, std::size_t k, const KMeansOptions& opts = {}) {
    return kmeans(dist.d, k, opts);
}

enum class ElbowMethod { max_second_difference, manual };

struct ElbowScan {
    std::vector<std::size_t> ks;
    std::vector<double> wcss_per_k;
    std::size_t chosen_k = 0;
    ElbowMethod method = ElbowMethod::max_second_difference;
};

/// Index into `wcss` (k = index + 1) maximizing wcss[k-1] - 2 wcss[k] + wcss[k+1] over
/// interior k; the smallest such k on ties. With no interior point the last k is returned.
inline std::size_t elbow_point(std::span<const double> wcss) {
    if (wcss.size() < 3) {
        return wcss.size();
    }
    std::size_t best = 2;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < wcss.size(); ++i) {
        double v = wcss[i - 1] - 2.0 * wcss[i] + wcss[i + 1];
        if (v > best_v) {
            best_v = v;
            best = i + 1;
        }
    }
    return best;
}

/// Runs k-means for k = 1..k_max with per-k seeds derived from `opts.seed`.
inline ElbowScan elbow_scan(const Matrix& points, std::size_t k_max, const KMeansOptions& opts = {}) {
    if (k_max < 2 || k_max > points.rows()) {
        fail(ErrorCode::KTooLarge, "k_max must lie in [2, n]");
    }
    ElbowScan scan;
    for (std::size_t k = 1; k <= k_max; ++k) {
        KMeansOptions o = opts;
        o.seed = derive_seed(opts.seed, k);
        scan.ks.push_back(k);
        scan.wcss_per_k.push_back(kmeans(points, k, o).wcss);
    }
    scan.chosen_k = elbow_point(scan.wcss_per_k);
    if (std::all_of(scan.wcss_per_k.begin(), scan.wcss_per_k.end(), [](double w) { return w == 0.0; })) {
        diag::warn("WCSS curve is flat (all points coincide); elbow defaults to k = "
                   + std::to_string(scan.chosen_k));
    }
    return scan;
}

inline ElbowScan elbow_scan(const DistanceMatrix& dist, std::size_t k_max, const KMeansOptions& opts = {}) {
    return elbow_scan(dist.d, k_max, opts);
}

} // namespace ctaclust

#endif
