#ifndef CTACLUST_PREPROCESS_HPP
#define CTACLUST_PREPROCESS_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "porter2.hpp"

namespace ctaclust {

using StopwordSet = std::set<std::string, std::less<>>;

/// Same list as data/stopwords_en.txt.
inline constexpr std::array default_stopword_list = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
    "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by", "for",
    "with", "about", "against", "between", "into", "through", "during", "before", "after",
    "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over", "under",
    "again", "further", "then", "once", "here", "there", "when", "where", "why", "how", "all",
    "any", "both", "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not",
    "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don",
    "should", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "couldn", "didn",
    "doesn", "hadn", "hasn", "haven", "isn", "ma", "mightn", "mustn", "needn", "shan",
    "shouldn", "wasn", "weren", "won", "wouldn",
};

inline StopwordSet default_stopwords() {
    return StopwordSet(default_stopword_list.begin(), default_stopword_list.end());
}

/// Parses a stopword file: one word per line, `#` starts a comment, blank lines ignored.
inline StopwordSet parse_stopwords(std::string_view text) {
    StopwordSet out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
            line.remove_prefix(1);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            std::string w(line);
            std::transform(w.begin(), w.end(), w.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            out.insert(std::move(w));
        }
        pos = eol + 1;
    }
    return out;
}

inline StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::MissingFile, "stopword file " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_stopwords(text);
}

struct ProcessedDoc {
    std::string doc_id;
    std::vector<std::string> terms;

    friend bool operator==(const ProcessedDoc&, const ProcessedDoc&) = default;
};

/// Lowercases ASCII letters and splits on every byte outside [a-z0-9]; fragments shorter
/// than two characters are dropped. Non-ASCII bytes act as separators.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 2) {
            tokens.push_back(cur);
        }
        cur.clear();
    };
    for (unsigned char c : text) {
        if (c >= 'A' && c <= 'Z') {
            cur.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            cur.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

inline std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                                 const StopwordSet& stopwords) {
    std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
    return tokens;
}

inline std::string stem(std::string_view token) { return porter2::stem(token); }

/// tokenize -> remove_stopwords -> stem for a single text.
inline std::vector<std::string> preprocess_text(std::string_view text, const StopwordSet& stopwords) {
    auto terms = remove_stopwords(tokenize(text), stopwords);
    for (auto& t : terms) {
        t = stem(t);
    }
    return terms;
}

inline std::vector<ProcessedDoc> preprocess_corpus(const Corpus& corpus, const StopwordSet& stopwords) {
    std::vector<ProcessedDoc> out;
    out.reserve(corpus.size());
    bool any = false;
    for (const auto& doc : corpus.documents) {
        ProcessedDoc p{doc.doc_id, preprocess_text(doc.text, stopwords)};
        if (p.terms.empty()) {
            diag::warn("document '" + doc.doc_id + "' has no terms after preprocessing");
        } else {
            any = true;
        }
        out.push_back(std::move(p));
    }
    if (!any) {
        fail(ErrorCode::AllDocsEmpty, "every document reduced to zero terms");
    }
    return out;
}

} // namespace ctaclust

#endif
