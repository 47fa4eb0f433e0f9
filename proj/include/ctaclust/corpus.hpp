#ifndef CTACLUST_CORPUS_HPP
#define CTACLUST_CORPUS_HPP

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "error.hpp"

namespace ctaclust {

namespace fs = std::filesystem;

struct Document {
    std::string doc_id;
    std::optional<std::string> actor_label;
    std::optional<std::string> source;
    std::optional<std::string> published_date;
    std::string text;
    std::string filename;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Immutable after load; document order is manifest order, or filename order without a manifest.
struct Corpus {
    std::vector<Document> documents;
    std::string source_dir;

    std::size_t size() const noexcept { return documents.size(); }

    std::vector<std::string> doc_ids() const {
        std::vector<std::string> ids;
        ids.reserve(documents.size());
        for (const auto& d : documents) {
            ids.push_back(d.doc_id);
        }
        return ids;
    }

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

inline constexpr std::string_view manifest_header[] = {
    "doc_id", "actor", "source", "published_date", "filename"};

/// Strict UTF-8 check: rejects overlongs, surrogates and code points above U+10FFFF.
inline bool is_valid_utf8(std::string_view s) {
    std::size_t i = 0;
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    while (i < s.size()) {
        unsigned char c = byte(i);
        std::size_t len = 0;
        unsigned lo = 0x80, hi = 0xBF;
        if (c < 0x80) {
            ++i;
            continue;
        } else if (c >= 0xC2 && c <= 0xDF) {
            len = 1;
        } else if (c >= 0xE0 && c <= 0xEF) {
            len = 2;
            if (c == 0xE0) lo = 0xA0;
            if (c == 0xED) hi = 0x9F;
        } else if (c >= 0xF0 && c <= 0xF4) {
            len = 3;
            if (c == 0xF0) lo = 0x90;
            if (c == 0xF4) hi = 0x8F;
        } else {
            return false;
        }
        for (std::size_t k = 1; k <= len; ++k) {
            if (i + k >= s.size()) {
                return false;
            }
            unsigned b = byte(i + k);
            unsigned min = k == 1 ? lo : 0x80;
            unsigned max = k == 1 ? hi : 0xBF;
            if (b < min || b > max) {
                return false;
            }
        }
        i += len + 1;
    }
    return true;
}

namespace detail {

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    });
}

inline std::optional<std::string> optional_field(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return s;
}

inline bool is_iso_date(std::string_view s) {
    // YYYY, YYYY-MM or YYYY-MM-DD, with real months and days
    auto number = [&](std::size_t from, std::size_t n) -> std::optional<unsigned> {
        unsigned v = 0;
        for (std::size_t k = from; k < from + n; ++k) {
            if (s[k] < '0' || s[k] > '9') return std::nullopt;
            v = v * 10 + static_cast<unsigned>(s[k] - '0');
        }
        return v;
    };
    if (s.size() != 4 && s.size() != 7 && s.size() != 10) return false;
    auto y = number(0, 4);
    if (!y) return false;
    if (s.size() == 4) return true;
    auto m = s[4] == '-' ? number(5, 2) : std::nullopt;
    if (!m || *m < 1 || *m > 12) return false;
    if (s.size() == 7) return true;
    auto d = s[7] == '-' ? number(8, 2) : std::nullopt;
    if (!d) return false;
    using namespace std::chrono;
    return year_month_day{year{static_cast<int>(*y)}, month{*m}, day{*d}}.ok();
}

inline Document read_document(const fs::path& path, Document doc) {
    if (!fs::is_regular_file(path)) {
        fail(ErrorCode::MissingFile, path.string());
    }
    doc.text = read_file(path);
    if (!is_valid_utf8(doc.text)) {
        fail(ErrorCode::NonUtf8, path.string());
    }
    if (is_blank(doc.text)) {
        fail(ErrorCode::EmptyDocument, path.string());
    }
    return doc;
}

} // namespace detail

/// Loads `dir/*.txt`, or the files listed by a manifest. Without an explicit manifest,
/// `dir/manifest.csv` is used when present.
inline Corpus load_corpus(const fs::path& dir, std::optional<fs::path> manifest = std::nullopt) {
    if (!fs::is_directory(dir)) {
        fail(ErrorCode::MissingFile, "corpus directory " + dir.string() + " does not exist");
    }
    if (!manifest && fs::is_regular_file(dir / "manifest.csv")) {
        manifest = dir / "manifest.csv";
    }

    Corpus corpus;
    corpus.source_dir = dir.string();
    std::set<std::string, std::less<>> seen;
    auto add = [&](Document doc) {
        if (doc.doc_id.empty()) {
            fail(ErrorCode::BadManifest, "empty doc_id for " + doc.filename);
        }
        if (!seen.insert(doc.doc_id).second) {
            fail(ErrorCode::DuplicateId, doc.doc_id);
        }
        corpus.documents.push_back(std::move(doc));
    };

    if (manifest) {
        if (!fs::is_regular_file(*manifest)) {
            fail(ErrorCode::MissingFile, "manifest " + manifest->string());
        }
        std::string bytes = detail::read_file(*manifest);
        if (!is_valid_utf8(bytes)) {
            fail(ErrorCode::NonUtf8, manifest->string());
        }
        auto rows = csv::parse(bytes);
        if (rows.empty() || !std::equal(rows[0].begin(), rows[0].end(),
                                        std::begin(manifest_header), std::end(manifest_header))
            || rows[0].size() != std::size(manifest_header)) {
            fail(ErrorCode::BadManifest,
                 "expected header doc_id,actor,source,published_date,filename");
        }
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.size() == 1 && row[0].empty()) {
                continue;
            }
            if (row.size() != std::size(manifest_header)) {
                fail(ErrorCode::BadManifest, "row " + std::to_string(r + 1) + " has "
                                                 + std::to_string(row.size()) + " fields");
            }
            if (row[4].empty()) {
                fail(ErrorCode::BadManifest, "row " + std::to_string(r + 1) + " has no filename");
            }
            if (!row[3].empty() && !detail::is_iso_date(row[3])) {
                fail(ErrorCode::BadManifest, "row " + std::to_string(r + 1)
                                                 + ": published_date is not ISO-8601: " + row[3]);
            }
            Document doc;
            doc.doc_id = row[0];
            doc.actor_label = detail::optional_field(row[1]);
            doc.source = detail::optional_field(row[2]);
            doc.published_date = detail::optional_field(row[3]);
            doc.filename = row[4];
            add(detail::read_document(dir / row[4], std::move(doc)));
        }
    } else {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
            return a.filename().string() < b.filename().string();
        });
        for (const auto& f : files) {
            Document doc;
            doc.doc_id = f.stem().string();
            doc.filename = f.filename().string();
            add(detail::read_document(f, std::move(doc)));
        }
    }
    return corpus;
}

/// Writes the corpus listing in manifest format; re-ingesting it reproduces order and ids.
inline void write_manifest(const Corpus& corpus, std::ostream& os) {
    csv::write_row(os, csv::Row(std::begin(manifest_header), std::end(manifest_header)));
    for (const auto& d : corpus.documents) {
        csv::write_row(os, {d.doc_id, d.actor_label.value_or(""), d.source.value_or(""),
                            d.published_date.value_or(""), d.filename});
    }
}

} // namespace ctaclust

#endif
