#ifndef CTACLUST_VECTORIZE_HPP
#define CTACLUST_VECTORIZE_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "preprocess.hpp"

namespace ctaclust {

struct Vocabulary {
    std::vector<std::string> terms;                     // column order
    std::unordered_map<std::string, std::size_t> index; // term -> column
    std::vector<std::size_t> df;                        // aligned with terms
    std::size_t n_docs = 0;

    std::size_t size() const noexcept { return terms.size(); }

    std::optional<std::size_t> find(const std::string& term) const {
        auto it = index.find(term);
        if (it == index.end()) {
            return std::nullopt;
        }
        return it->second;
    }
};

/// Sparse row entry (column, weight); rows are sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, double>>;

struct TfIdfMatrix {
    std::size_t n_docs = 0;
    std::size_t n_terms = 0;
    std::vector<SparseRow> rows;
    std::vector<std::string> doc_ids;

    Matrix to_dense() const {
        Matrix m(n_docs, n_terms);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (auto [col, w] : rows[i]) {
                m(i, col) = w;
            }
        }
        return m;
    }
};

/// Keeps the terms whose document frequency satisfies min_df <= df and df / n <= max_df,
/// in first-occurrence order over the corpus.
inline Vocabulary build_vocabulary(const std::vector<ProcessedDoc>& docs, double max_df,
                                   std::size_t min_df = 1) {
    if (!(max_df > 0.0 && max_df <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "max_df must lie in (0, 1]");
    }
    if (docs.empty()) {
        fail(ErrorCode::EmptyVocabulary, "no documents");
    }
    std::vector<std::string> order;
    std::unordered_map<std::string, std::size_t> df;
    for (const auto& d : docs) {
        std::unordered_map<std::string, bool> seen;
        for (const auto& t : d.terms) {
            if (seen.emplace(t, true).second) {
                auto [it, inserted] = df.emplace(t, 0);
                if (inserted) {
                    order.push_back(t);
                }
                ++it->second;
            }
        }
    }

    Vocabulary vocab;
    vocab.n_docs = docs.size();
    const double n = static_cast<double>(docs.size());
    for (const auto& t : order) {
        std::size_t f = df.at(t);
        if (f >= min_df && static_cast<double>(f) / n <= max_df) {
            vocab.index.emplace(t, vocab.terms.size());
            vocab.terms.push_back(t);
            vocab.df.push_back(f);
        }
    }
    if (vocab.terms.empty()) {
        fail(ErrorCode::EmptyVocabulary, "every term was filtered by the document-frequency bounds");
    }
    return vocab;
}

/// weight(d, t) = raw count(d, t) * ln(n / df(t)); zero weights are not stored.
inline TfIdfMatrix tfidf(const std::vector<ProcessedDoc>& docs, const Vocabulary& vocab) {
    TfIdfMatrix m;
    m.n_docs = docs.size();
    m.n_terms = vocab.size();
    m.rows.resize(docs.size());
    const double n = static_cast<double>(vocab.n_docs);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        m.doc_ids.push_back(docs[i].doc_id);
        std::map<std::size_t, std::size_t> counts;
        for (const auto& t : docs[i].terms) {
            if (auto col = vocab.find(t)) {
                ++counts[*col];
            }
        }
        for (auto [col, tf] : counts) {
            double w = static_cast<double>(tf) * std::log(n / static_cast<double>(vocab.df[col]));
            if (w > 0.0) {
                m.rows[i].emplace_back(col, w);
            }
        }
    }
    return m;
}

} // namespace ctaclust

#endif
