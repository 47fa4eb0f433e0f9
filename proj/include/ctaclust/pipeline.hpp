#ifndef CTACLUST_PIPELINE_HPP
#define CTACLUST_PIPELINE_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "agnes.hpp"
#include "corpus.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "evaluate.hpp"
#include "hybrid.hpp"
#include "kmeans.hpp"
#include "preprocess.hpp"
#include "similarity.hpp"
#include "vectorize.hpp"

namespace ctaclust {

enum class Algorithm { kmeans, agnes, efficient };
enum class FeatureSpace { distance_rows, tfidf };

inline const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::kmeans: return "kmeans";
    case Algorithm::agnes: return "agnes";
    case Algorithm::efficient: return "efficient";
    }
    return "?";
}

inline const char* to_string(FeatureSpace s) {
    return s == FeatureSpace::distance_rows ? "distance_rows" : "tfidf";
}

inline constexpr std::array all_similarities = {Similarity::cosine, Similarity::jaccard};
inline constexpr std::array all_metrics = {Metric::euclidean, Metric::manhattan, Metric::canberra,
                                           Metric::minkowski};
inline constexpr std::array all_linkages = {Linkage::ward, Linkage::single, Linkage::complete,
                                            Linkage::average, Linkage::centroid};

namespace detail {
template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<Enum, N>& values, std::string_view what) {
    for (auto v : values) {
        if (text == to_string(v)) {
            return v;
        }
    }
    fail(ErrorCode::InvalidConfig, "unknown " + std::string(what) + " '" + std::string(text) + "'");
}
} // namespace detail

inline Similarity parse_similarity(std::string_view s) {
    return detail::parse_enum(s, all_similarities, "similarity");
}
inline Metric parse_metric(std::string_view s) { return detail::parse_enum(s, all_metrics, "metric"); }
inline Linkage parse_linkage(std::string_view s) { return detail::parse_enum(s, all_linkages, "linkage"); }
inline Algorithm parse_algorithm(std::string_view s) {
    return detail::parse_enum(s, std::array{Algorithm::kmeans, Algorithm::agnes, Algorithm::efficient},
                              "algorithm");
}
inline FeatureSpace parse_feature_space(std::string_view s) {
    return detail::parse_enum(s, std::array{FeatureSpace::distance_rows, FeatureSpace::tfidf},
                              "feature space");
}

/// One clustering run. Feature-space operations (k-means, AGNES over metric distances, the
/// hybrid's first stage) use the rows of the document distance matrix unless `space` is tfidf.
struct RunConfig {
    Similarity similarity = Similarity::cosine;
    Metric metric = Metric::euclidean;
    double minkowski_p = 2.0;
    std::optional<Linkage> linkage;
    Algorithm algorithm = Algorithm::efficient;
    std::optional<std::size_t> k;
    std::size_t k_max = 20;
    double max_df = 0.8;
    std::size_t min_df = 1;
    std::uint64_t seed = 42;
    std::optional<std::size_t> cut;
    std::optional<std::size_t> k_mid;
    std::optional<double> max_height;
    FeatureSpace space = FeatureSpace::distance_rows;
    InitMethod init = InitMethod::random;
    std::size_t max_iter = 300;

    void validate() const {
        const bool hierarchical = algorithm != Algorithm::kmeans;
        if (hierarchical && !linkage) {
            fail(ErrorCode::InvalidConfig, std::string("--linkage is required for ") + to_string(algorithm));
        }
        if (!hierarchical && linkage) {
            fail(ErrorCode::InvalidConfig, "--linkage does not apply to kmeans");
        }
        if (algorithm == Algorithm::efficient && linkage == Linkage::centroid) {
            fail(ErrorCode::CentroidLinkageNotApplicable,
                 "efficient agglomerative clustering does not support centroid linkage");
        }
        if (!(minkowski_p >= 1.0)) {
            fail(ErrorCode::InvalidConfig, "--minkowski-p must be >= 1");
        }
        if (!(max_df > 0.0 && max_df <= 1.0)) {
            fail(ErrorCode::InvalidConfig, "--max-df must lie in (0, 1]");
        }
        if (k && *k == 0) fail(ErrorCode::InvalidConfig, "--k must be positive");
        if (cut && *cut == 0) fail(ErrorCode::InvalidConfig, "--cut must be positive");
        if (k_max < 2) fail(ErrorCode::InvalidConfig, "--k-max must be >= 2");
        if (max_iter == 0) fail(ErrorCode::InvalidConfig, "max_iter must be positive");
    }

    KMeansOptions kmeans_options(std::uint64_t run_seed) const {
        return {metric, minkowski_p, run_seed, max_iter, init};
    }
};

// Seeds depend on the master seed and the similarity only, so cells that differ by metric or
// linkage start k-means from the same rows.
inline std::uint64_t clustering_seed(std::uint64_t master, Similarity s) {
    return derive_seed(master, 1 + static_cast<std::uint64_t>(s));
}
inline std::uint64_t elbow_seed(std::uint64_t master, Similarity s) {
    return derive_seed(master, 101 + static_cast<std::uint64_t>(s));
}

/// Preprocessed corpus and its TF-IDF representation.
struct Workspace {
    Corpus corpus;
    std::vector<ProcessedDoc> docs;
    Vocabulary vocab;
    TfIdfMatrix tfidf;
    Matrix tfidf_dense;
};

inline Workspace prepare(Corpus corpus, const StopwordSet& stopwords, double max_df, std::size_t min_df = 1) {
    if (corpus.size() < 2) {
        fail(ErrorCode::InvalidArgument, "clustering needs at least two documents");
    }
    Workspace ws;
    ws.corpus = std::move(corpus);
    ws.docs = preprocess_corpus(ws.corpus, stopwords);
    ws.vocab = build_vocabulary(ws.docs, max_df, min_df);
    ws.tfidf = tfidf(ws.docs, ws.vocab);
    ws.tfidf_dense = ws.tfidf.to_dense();
    return ws;
}

inline const Matrix& feature_matrix(const Workspace& ws, const DistanceMatrix& dist, FeatureSpace space) {
    return space == FeatureSpace::tfidf ? ws.tfidf_dense : dist.d;
}

struct KChoice {
    std::size_t k = 0;
    std::optional<ElbowScan> elbow;
};

/// Manual k, or the elbow of a Euclidean k-means WCSS scan over k = 1..min(k_max, n).
inline KChoice choose_k(const Matrix& features, const RunConfig& cfg) {
    const std::size_t n = features.rows();
    KChoice out;
    if (cfg.k) {
        if (*cfg.k > n) {
            fail(ErrorCode::KTooLarge, "k = " + std::to_string(*cfg.k) + " exceeds " + std::to_string(n) + " documents");
        }
        out.k = *cfg.k;
        return out;
    }
    std::size_t k_max = cfg.k_max;
    if (k_max > n) {
        diag::warn("k_max " + std::to_string(k_max) + " exceeds the document count; scanning k = 1.."
                   + std::to_string(n));
        k_max = n;
    }
    KMeansOptions opts{Metric::euclidean, 2.0, elbow_seed(cfg.seed, cfg.similarity), cfg.max_iter, cfg.init};
    out.elbow = elbow_scan(features, k_max, opts);
    out.k = out.elbow->chosen_k;
    return out;
}

struct CellResult {
    FlatClustering clustering;
    std::optional<KMeansResult> kmeans;
    std::optional<HybridResult> hybrid;
    std::optional<Dendrogram> dendrogram;
    std::size_t k = 0;
    std::size_t k_mid = 0;
    std::size_t cut = 0;
    ValidityScores scores;
};

/// Default number of middle-level clusters for the hybrid: twice the target, at least the cut.
inline std::size_t default_k_mid(std::size_t n, std::size_t k, std::size_t cut) {
    return std::min(n, std::max(2 * k, cut));
}

/// Runs one algorithm for a fixed k and scores it against the document distance matrix.
inline CellResult run_cell(const Matrix& features, const DistanceMatrix& dist, const RunConfig& cfg,
                           std::size_t k) {
    cfg.validate();
    const std::size_t n = features.rows();
    CellResult out;
    out.k = k;
    const auto opts = cfg.kmeans_options(clustering_seed(cfg.seed, cfg.similarity));
    switch (cfg.algorithm) {
    case Algorithm::kmeans: {
        out.kmeans = kmeans(features, k, opts);
        out.clustering = make_flat(out.kmeans->labels, Provenance::kmeans);
        out.cut = k;
        break;
    }
    case Algorithm::agnes: {
        Matrix pd = pairwise_distances(features, cfg.metric, cfg.minkowski_p);
        out.dendrogram = agnes(pd, *cfg.linkage, AgnesStop{1, cfg.max_height});
        out.cut = cfg.cut.value_or(cfg.max_height ? n - out.dendrogram->merges.size() : k);
        out.clustering = cut_dendrogram(*out.dendrogram, out.cut);
        break;
    }
    case Algorithm::efficient: {
        out.cut = cfg.cut.value_or(k);
        out.k_mid = cfg.k_mid.value_or(default_k_mid(n, k, out.cut));
        if (out.k_mid < out.cut) {
            fail(ErrorCode::InvalidCut, "cut " + std::to_string(out.cut) + " exceeds k_mid "
                                            + std::to_string(out.k_mid));
        }
        out.hybrid = efficient_agglomerative(features, out.k_mid, *cfg.linkage, opts);
        out.dendrogram = out.hybrid->hierarchy;
        out.clustering = cut_hybrid(*out.hybrid, out.cut);
        break;
    }
    }
    out.scores = score(dist, out.clustering);
    return out;
}

struct TermWeight {
    std::string term;
    double weight = 0.0;
};

struct GroupProfile {
    std::size_t group_id = 0;
    std::vector<std::string> actor_labels;
    std::vector<std::string> doc_ids;
    std::vector<TermWeight> top_terms;
};

/// One profile per cluster: member documents, their distinct actor labels, and the terms with
/// the largest summed TF-IDF weight over the members (at most `top_n`).
inline std::vector<GroupProfile> export_groups(const FlatClustering& clustering, const Corpus& corpus,
                                               const TfIdfMatrix& m, const Vocabulary& vocab,
                                               std::size_t top_n = 20) {
    if (clustering.labels.size() != corpus.size() || m.n_docs != corpus.size()) {
        fail(ErrorCode::DimensionMismatch, "clustering, corpus and TF-IDF matrix disagree in size");
    }
    std::vector<GroupProfile> groups(clustering.n_clusters);
    std::vector<std::vector<double>> sums(clustering.n_clusters, std::vector<double>(vocab.size(), 0.0));
    for (std::size_t g = 0; g < groups.size(); ++g) {
        groups[g].group_id = g;
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto& g = groups[clustering.labels[i]];
        g.doc_ids.push_back(corpus.documents[i].doc_id);
        if (const auto& a = corpus.documents[i].actor_label) {
            g.actor_labels.push_back(*a);
        }
        for (auto [col, w] : m.rows[i]) {
            sums[clustering.labels[i]][col] += w;
        }
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& actors = groups[g].actor_labels;
        std::sort(actors.begin(), actors.end());
        actors.erase(std::unique(actors.begin(), actors.end()), actors.end());
        std::vector<TermWeight> terms;
        for (std::size_t c = 0; c < vocab.size(); ++c) {
            if (sums[g][c] > 0.0) {
                terms.push_back({vocab.terms[c], sums[g][c]});
            }
        }
        std::sort(terms.begin(), terms.end(), [](const TermWeight& a, const TermWeight& b) {
            return a.weight != b.weight ? a.weight > b.weight : a.term < b.term;
        });
        if (terms.size() > top_n) {
            terms.resize(top_n);
        }
        groups[g].top_terms = std::move(terms);
    }
    return groups;
}

} // namespace ctaclust

#endif
