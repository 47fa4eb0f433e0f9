#ifndef CTACLUST_ARTIFACTS_HPP
#define CTACLUST_ARTIFACTS_HPP

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "error.hpp"
#include "pipeline.hpp"

namespace ctaclust {

enum class OutputFormat { csv, json };

/// Files are written into a hidden staging directory next to the destination and renamed into
/// place by commit(); an uncommitted stage is deleted on destruction.
class ArtifactStage {
public:
    explicit ArtifactStage(const fs::path& out_dir) : out_(out_dir) {
        std::error_code ec;
        fs::create_directories(out_, ec);
        if (ec) {
            fail(ErrorCode::Io, "cannot create output directory " + out_.string() + ": " + ec.message());
        }
        std::random_device rd;
        tmp_ = out_ / (".ctaclust-stage-" + std::to_string(rd()));
        fs::create_directories(tmp_);
    }
    ArtifactStage(const ArtifactStage&) = delete;
    ArtifactStage& operator=(const ArtifactStage&) = delete;

    ~ArtifactStage() {
        std::error_code ec;
        fs::remove_all(tmp_, ec);
    }

    template <typename Writer>
    void write(const std::string& name, Writer&& writer) {
        std::ofstream os(tmp_ / name, std::ios::binary);
        if (!os) {
            fail(ErrorCode::Io, "cannot write " + (tmp_ / name).string());
        }
        writer(os);
        os.close();
        if (!os) {
            fail(ErrorCode::Io, "failed writing " + name);
        }
        names_.push_back(name);
    }

    void commit() {
        for (const auto& n : names_) {
            fs::rename(tmp_ / n, out_ / n);
        }
    }

    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    fs::path out_;
    fs::path tmp_;
    std::vector<std::string> names_;
};

inline std::string format_optional_count(std::size_t v) { return v ? std::to_string(v) : ""; }

inline void write_assignments(std::ostream& os, const Corpus& corpus, const FlatClustering& c, OutputFormat f) {
    if (f == OutputFormat::json) {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            arr.push_back({{"doc_id", corpus.documents[i].doc_id}, {"cluster", c.labels[i]}});
        }
        os << arr.dump(2) << '\n';
        return;
    }
    csv::write_row(os, {"doc_id", "cluster"});
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        csv::write_row(os, {corpus.documents[i].doc_id, std::to_string(c.labels[i])});
    }
}

inline void write_elbow(std::ostream& os, const ElbowScan& scan, OutputFormat f) {
    if (f == OutputFormat::json) {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < scan.ks.size(); ++i) {
            arr.push_back({{"k", scan.ks[i]}, {"wcss", scan.wcss_per_k[i]}});
        }
        os << nlohmann::json{{"chosen_k", scan.chosen_k}, {"curve", arr}}.dump(2) << '\n';
        return;
    }
    csv::write_row(os, {"k", "wcss"});
    for (std::size_t i = 0; i < scan.ks.size(); ++i) {
        csv::write_row(os, {std::to_string(scan.ks[i]), csv::format_double(scan.wcss_per_k[i])});
    }
}

inline nlohmann::json dendrogram_json(const Dendrogram& tree) {
    auto merges = nlohmann::json::array();
    for (const auto& m : tree.merges) {
        merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
    }
    return {{"n_leaves", tree.n_leaves}, {"merges", merges}};
}

inline Dendrogram parse_dendrogram(const nlohmann::json& j) {
    Dendrogram tree;
    tree.n_leaves = j.at("n_leaves").get<std::size_t>();
    tree.leaf_sizes.assign(tree.n_leaves, 1);
    for (const auto& m : j.at("merges")) {
        tree.merges.push_back({m.at("left").get<std::size_t>(), m.at("right").get<std::size_t>(),
                               m.at("height").get<double>(), m.at("size").get<std::size_t>()});
    }
    return tree;
}

inline void write_groups(std::ostream& os, const Corpus& corpus, const FlatClustering& c, OutputFormat f) {
    if (f == OutputFormat::json) {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto& d = corpus.documents[i];
            arr.push_back({{"group_id", c.labels[i]}, {"doc_id", d.doc_id}, {"actor", d.actor_label.value_or("")}});
        }
        os << arr.dump(2) << '\n';
        return;
    }
    csv::write_row(os, {"group_id", "doc_id", "actor"});
    for (std::size_t g = 0; g < c.n_clusters; ++g) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (c.labels[i] == g) {
                const auto& d = corpus.documents[i];
                csv::write_row(os, {std::to_string(g), d.doc_id, d.actor_label.value_or("")});
            }
        }
    }
}

inline void write_top_terms(std::ostream& os, const std::vector<GroupProfile>& groups, OutputFormat f) {
    if (f == OutputFormat::json) {
        auto arr = nlohmann::json::array();
        for (const auto& g : groups) {
            for (std::size_t r = 0; r < g.top_terms.size(); ++r) {
                arr.push_back({{"group_id", g.group_id}, {"rank", r + 1},
                               {"term", g.top_terms[r].term}, {"weight", g.top_terms[r].weight}});
            }
        }
        os << arr.dump(2) << '\n';
        return;
    }
    csv::write_row(os, {"group_id", "rank", "term", "weight"});
    for (const auto& g : groups) {
        for (std::size_t r = 0; r < g.top_terms.size(); ++r) {
            csv::write_row(os, {std::to_string(g.group_id), std::to_string(r + 1), g.top_terms[r].term,
                                csv::format_double(g.top_terms[r].weight)});
        }
    }
}

struct RunOptions {
    OutputFormat format = OutputFormat::csv;
    bool timing = false;     // write wall-clock runtime (makes output run-dependent)
    std::size_t jobs = 1;
};

struct RunSummary {
    RunConfig config;
    KChoice k_choice;
    CellResult cell;
    std::vector<GroupProfile> groups;
    double runtime_ms = 0.0;
    std::vector<std::string> artifacts;
};

inline std::string scoring_space(Similarity s) {
    return std::string(to_string(s)) + "_distance";
}

inline void write_scores(std::ostream& os, const RunSummary& s, const RunOptions& opt) {
    const auto& c = s.config;
    const std::string runtime = opt.timing ? std::to_string(static_cast<long long>(s.runtime_ms)) : "";
    if (opt.format == OutputFormat::json) {
        nlohmann::json j{{"similarity", to_string(c.similarity)},
                         {"metric", to_string(c.metric)},
                         {"linkage", c.linkage ? to_string(*c.linkage) : ""},
                         {"algorithm", to_string(c.algorithm)},
                         {"k", s.cell.k},
                         {"k_source", s.k_choice.elbow ? "elbow" : "manual"},
                         {"k_mid", s.cell.k_mid},
                         {"cut", s.cell.cut},
                         {"n_clusters", s.cell.clustering.n_clusters},
                         {"silhouette", s.cell.scores.silhouette},
                         {"davies_bouldin", std::isfinite(s.cell.scores.davies_bouldin)
                                                ? nlohmann::json(s.cell.scores.davies_bouldin)
                                                : nlohmann::json(csv::format_double(s.cell.scores.davies_bouldin))},
                         {"scoring_space", scoring_space(c.similarity)},
                         {"feature_space", to_string(c.space)},
                         {"seed", c.seed},
                         {"runtime_ms", opt.timing ? nlohmann::json(static_cast<long long>(s.runtime_ms))
                                                   : nlohmann::json(nullptr)}};
        os << j.dump(2) << '\n';
        return;
    }
    csv::write_row(os, {"similarity", "metric", "linkage", "algorithm", "k", "k_source", "k_mid", "cut",
                        "n_clusters", "silhouette", "davies_bouldin", "scoring_space", "feature_space",
                        "seed", "runtime_ms"});
    csv::write_row(os, {to_string(c.similarity), to_string(c.metric), c.linkage ? to_string(*c.linkage) : "",
                        to_string(c.algorithm), std::to_string(s.cell.k),
                        s.k_choice.elbow ? "elbow" : "manual", format_optional_count(s.cell.k_mid),
                        std::to_string(s.cell.cut), std::to_string(s.cell.clustering.n_clusters),
                        csv::format_double(s.cell.scores.silhouette),
                        csv::format_double(s.cell.scores.davies_bouldin), scoring_space(c.similarity),
                        to_string(c.space), std::to_string(c.seed), runtime});
}

/// End-to-end run over a prepared workspace; writes assignments, scores, elbow (when k is
/// chosen automatically), dendrogram (hierarchical algorithms), groups and top terms.
inline RunSummary run_pipeline(const Workspace& ws, const RunConfig& cfg, const fs::path& out_dir,
                               const RunOptions& opt = {}) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    RunSummary s;
    s.config = cfg;
    DistanceMatrix dist = distance_matrix(ws.tfidf, cfg.similarity, opt.jobs);
    const Matrix& features = feature_matrix(ws, dist, cfg.space);
    s.k_choice = choose_k(features, cfg);
    s.cell = run_cell(features, dist, cfg, s.k_choice.k);
    s.groups = export_groups(s.cell.clustering, ws.corpus, ws.tfidf, ws.vocab);
    s.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const std::string ext = opt.format == OutputFormat::json ? ".json" : ".csv";
    ArtifactStage stage(out_dir);
    stage.write("assignments" + ext, [&](std::ostream& os) {
        write_assignments(os, ws.corpus, s.cell.clustering, opt.format);
    });
    stage.write("scores" + ext, [&](std::ostream& os) { write_scores(os, s, opt); });
    if (s.k_choice.elbow) {
        stage.write("elbow" + ext, [&](std::ostream& os) { write_elbow(os, *s.k_choice.elbow, opt.format); });
    }
    if (s.cell.dendrogram) {
        stage.write("dendrogram.json", [&](std::ostream& os) {
            os << dendrogram_json(*s.cell.dendrogram).dump(2) << '\n';
        });
    }
    stage.write("groups" + ext, [&](std::ostream& os) {
        write_groups(os, ws.corpus, s.cell.clustering, opt.format);
    });
    stage.write("top_terms" + ext, [&](std::ostream& os) { write_top_terms(os, s.groups, opt.format); });
    stage.commit();
    s.artifacts = stage.names();
    return s;
}

inline RunSummary run_pipeline(const fs::path& corpus_dir, const RunConfig& cfg, const fs::path& out_dir,
                               const StopwordSet& stopwords = default_stopwords(), const RunOptions& opt = {}) {
    cfg.validate();
    auto ws = prepare(load_corpus(corpus_dir), stopwords, cfg.max_df, cfg.min_df);
    return run_pipeline(ws, cfg, out_dir, opt);
}

/// Table-style markdown overview of groups read back from groups.csv / top_terms.csv.
inline void render_group_report(std::ostream& os, const std::vector<csv::Row>& groups_csv,
                                const std::vector<csv::Row>& terms_csv, std::size_t terms_per_group = 8) {
    struct G {
        std::vector<std::string> actors, docs, terms;
    };
    std::vector<G> gs;
    auto group = [&](const std::string& id) -> G& {
        auto v = std::stoul(id);
        if (v >= gs.size()) gs.resize(v + 1);
        return gs[v];
    };
    for (std::size_t r = 1; r < groups_csv.size(); ++r) {
        const auto& row = groups_csv[r];
        if (row.size() < 3) continue;
        auto& g = group(row[0]);
        g.docs.push_back(row[1]);
        if (!row[2].empty() && std::find(g.actors.begin(), g.actors.end(), row[2]) == g.actors.end()) {
            g.actors.push_back(row[2]);
        }
    }
    for (std::size_t r = 1; r < terms_csv.size(); ++r) {
        const auto& row = terms_csv[r];
        if (row.size() < 4) continue;
        auto& g = group(row[0]);
        if (g.terms.size() < terms_per_group) g.terms.push_back(row[2]);
    }
    auto join = [](std::vector<std::string> v, bool sort) {
        if (sort) std::sort(v.begin(), v.end());
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += (i ? ", " : "") + v[i];
        }
        return out;
    };
    os << "| Group | Cyber threat actors | Documents | Top terms |\n";
    os << "|---|---|---|---|\n";
    for (std::size_t g = 0; g < gs.size(); ++g) {
        os << "| Group " << g + 1 << " | " << join(gs[g].actors, true) << " | " << gs[g].docs.size()
           << " | " << join(gs[g].terms, false) << " |\n";
    }
}

} // namespace ctaclust

#endif
