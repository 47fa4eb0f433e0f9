#ifndef CTACLUST_SIMILARITY_HPP
#define CTACLUST_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "vectorize.hpp"

namespace ctaclust {

enum class Similarity { cosine, jaccard };
enum class Metric { euclidean, manhattan, canberra, minkowski };

inline const char* to_string(Similarity s) {
    return s == Similarity::cosine ? "cosine" : "jaccard";
}

inline const char* to_string(Metric m) {
    switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::canberra: return "canberra";
    case Metric::minkowski: return "minkowski";
    }
    return "?";
}

/// Cosine of two sparse rows (sorted by column). 0 when either vector is all-zero.
inline double cosine_similarity(const SparseRow& u, const SparseRow& v) {
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (auto [_, w] : u) nu += w * w;
    for (auto [_, w] : v) nv += w * w;
    if (nu == 0.0 || nv == 0.0) {
        return 0.0;
    }
    std::size_t i = 0, j = 0;
    while (i < u.size() && j < v.size()) {
        if (u[i].first == v[j].first) {
            dot += u[i].second * v[j].second;
            ++i;
            ++j;
        } else if (u[i].first < v[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

inline double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        fail(ErrorCode::DimensionMismatch, "cosine_similarity on vectors of different length");
    }
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) {
        diag::warn("cosine similarity of an all-zero vector taken as 0");
        return 0.0;
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

/// |A ∩ B| / |A ∪ B| over sorted, duplicate-free id lists. J(∅, ∅) = 1.
inline double jaccard_similarity(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

/// Jaccard over arbitrary term sets; duplicates are ignored.
inline double jaccard_similarity(std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    std::vector<std::string> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    return static_cast<double>(inter.size())
           / static_cast<double>(a.size() + b.size() - inter.size());
}

/// Symmetric n x n document distances, d = 1 - similarity.
struct DistanceMatrix {
    std::size_t n = 0;
    Matrix d;
    Similarity kind = Similarity::cosine;
    std::vector<std::string> doc_ids;

    double operator()(std::size_t i, std::size_t j) const { return d(i, j); }
};

inline DistanceMatrix distance_matrix(const TfIdfMatrix& m, Similarity kind, std::size_t jobs = 1) {
    const std::size_t n = m.n_docs;
    if (n < 2) {
        fail(ErrorCode::InvalidArgument, "distance matrix needs at least two documents");
    }
    std::vector<std::vector<std::size_t>> presence(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto [col, _] : m.rows[i]) {
            presence[i].push_back(col);
        }
        if (m.rows[i].empty()) {
            diag::warn("document '" + m.doc_ids[i] + "' has an all-zero TF-IDF row; "
                       + (kind == Similarity::cosine ? "cosine similarity to it is 0"
                                                     : "it is identical to other empty rows"));
        }
    }

    DistanceMatrix out;
    out.n = n;
    out.kind = kind;
    out.doc_ids = m.doc_ids;
    out.d = Matrix(n, n);
    // Each upper-triangle entry is computed once, by one thread, then mirrored.
    parallel_for(n, jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = kind == Similarity::cosine ? cosine_similarity(m.rows[i], m.rows[j])
                                                  : jaccard_similarity(presence[i], presence[j]);
            double dist = std::clamp(1.0 - s, 0.0, 1.0);
            out.d(i, j) = dist;
            out.d(j, i) = dist;
        }
    });
    return out;
}

/// Feature-space distance. Minkowski with p = 1 or p = 2 is routed to Manhattan or Euclidean
/// so that those cases agree bit-for-bit.
inline double metric_distance(std::span<const double> x, std::span<const double> y, Metric metric,
                              double p = 2.0) {
    if (x.size() != y.size()) {
        fail(ErrorCode::DimensionMismatch, "vectors of length " + std::to_string(x.size()) + " and "
                                               + std::to_string(y.size()));
    }
    if (metric == Metric::minkowski) {
        if (!(p >= 1.0)) {
            fail(ErrorCode::InvalidP, "minkowski p must be >= 1");
        }
        if (p == 2.0) {
            metric = Metric::euclidean;
        } else if (p == 1.0) {
            metric = Metric::manhattan;
        }
    }
    double acc = 0.0;
    switch (metric) {
    case Metric::euclidean:
        for (std::size_t i = 0; i < x.size(); ++i) {
            double t = x[i] - y[i];
            acc += t * t;
        }
        return std::sqrt(acc);
    case Metric::manhattan:
        for (std::size_t i = 0; i < x.size(); ++i) {
            acc += std::abs(x[i] - y[i]);
        }
        return acc;
    case Metric::canberra:
        for (std::size_t i = 0; i < x.size(); ++i) {
            double den = std::abs(x[i]) + std::abs(y[i]);
            if (den > 0.0) {
                acc += std::abs(x[i] - y[i]) / den;
            }
        }
        return acc;
    case Metric::minkowski:
        for (std::size_t i = 0; i < x.size(); ++i) {
            acc += std::pow(std::abs(x[i] - y[i]), p);
        }
        return std::pow(acc, 1.0 / p);
    }
    return acc;
}

/// Square matrix of metric distances between the rows of `points`.
inline Matrix pairwise_distances(const Matrix& points, Metric metric, double p = 2.0,
                                 std::size_t jobs = 1) {
    const std::size_t n = points.rows();
    Matrix d(n, n);
    parallel_for(n, jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = metric_distance(points.row(i), points.row(j), metric, p);
            d(i, j) = v;
            d(j, i) = v;
        }
    });
    return d;
}

} // namespace ctaclust

#endif
