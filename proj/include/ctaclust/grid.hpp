#ifndef CTACLUST_GRID_HPP
#define CTACLUST_GRID_HPP

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "artifacts.hpp"
#include "pipeline.hpp"

namespace ctaclust {

struct ScoreRow {
    RunConfig config;
    enum class Status { ok, not_applicable, failed } status = Status::ok;
    double silhouette = 0.0;
    double davies_bouldin = 0.0;
    double runtime_ms = 0.0;
    std::string error;
};

struct GridOptions {
    RunConfig base;          // seed, k, k_max, p, cut, k_mid, feature space, init, max_iter
    std::size_t jobs = 1;
};

struct GridReport {
    std::vector<ScoreRow> rows;
    std::map<Similarity, KChoice> k_choice;
};

/// All cells: k-means over similarity x metric (8), AGNES and the hybrid over
/// similarity x metric x linkage (40 each). Hybrid x centroid cells are reported as N.A.
inline std::vector<RunConfig> grid_cells(const RunConfig& base) {
    std::vector<RunConfig> cells;
    for (auto s : all_similarities) {
        for (auto m : all_metrics) {
            RunConfig c = base;
            c.similarity = s;
            c.metric = m;
            c.algorithm = Algorithm::kmeans;
            c.linkage.reset();
            cells.push_back(c);
        }
        for (auto algo : {Algorithm::agnes, Algorithm::efficient}) {
            for (auto l : all_linkages) {
                for (auto m : all_metrics) {
                    RunConfig c = base;
                    c.similarity = s;
                    c.metric = m;
                    c.algorithm = algo;
                    c.linkage = l;
                    cells.push_back(c);
                }
            }
        }
    }
    return cells;
}

inline GridReport run_grid(const Workspace& ws, const GridOptions& opt) {
    GridReport report;
    std::map<Similarity, DistanceMatrix> dists;
    for (auto s : all_similarities) {
        RunConfig c = opt.base;
        c.similarity = s;
        dists.emplace(s, distance_matrix(ws.tfidf, s, opt.jobs));
        report.k_choice.emplace(s, choose_k(feature_matrix(ws, dists.at(s), c.space), c));
    }

    auto cells = grid_cells(opt.base);
    report.rows.resize(cells.size());
    parallel_for(cells.size(), opt.jobs, [&](std::size_t i) {
        ScoreRow& row = report.rows[i];
        row.config = cells[i];
        const auto& cfg = cells[i];
        if (cfg.algorithm == Algorithm::efficient && cfg.linkage == Linkage::centroid) {
            row.status = ScoreRow::Status::not_applicable;
            return;
        }
        const auto& dist = dists.at(cfg.similarity);
        const auto start = std::chrono::steady_clock::now();
        try {
            auto cell = run_cell(feature_matrix(ws, dist, cfg.space), dist, cfg,
                                 report.k_choice.at(cfg.similarity).k);
            row.silhouette = cell.scores.silhouette;
            row.davies_bouldin = cell.scores.davies_bouldin;
        } catch (const Error& e) {
            row.status = ScoreRow::Status::failed;
            row.error = e.what();
        }
        row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    });
    for (const auto& r : report.rows) {
        if (r.status == ScoreRow::Status::failed) {
            diag::warn(std::string("grid cell ") + to_string(r.config.similarity) + "/" + to_string(r.config.metric)
                       + "/" + (r.config.linkage ? to_string(*r.config.linkage) : "-") + "/"
                       + to_string(r.config.algorithm) + " failed: " + r.error);
        }
    }
    return report;
}

namespace detail {
inline std::string score_text(const ScoreRow& r, double v) {
    switch (r.status) {
    case ScoreRow::Status::not_applicable: return "N.A";
    case ScoreRow::Status::failed: return "ERROR";
    case ScoreRow::Status::ok: break;
    }
    return csv::format_double(v);
}

inline nlohmann::json score_json(const ScoreRow& r, double v) {
    if (r.status != ScoreRow::Status::ok) return score_text(r, v);
    if (!std::isfinite(v)) return csv::format_double(v);
    return v;
}

inline std::string display_name(Similarity s) {
    return s == Similarity::cosine ? "Cosine similarity" : "Jaccard similarity";
}

inline std::string display_name(Metric m) {
    std::string s = to_string(m);
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

inline std::string display_name(Linkage l) {
    std::string s = to_string(l);
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}
} // namespace detail

/// grid.csv; runtime_ms is left empty unless `timing` is set so repeated runs are byte-identical.
inline void write_grid_csv(std::ostream& os, const GridReport& g, bool timing) {
    csv::write_row(os, {"similarity", "metric", "linkage", "algorithm", "silhouette", "davies_bouldin", "runtime_ms"});
    for (const auto& r : g.rows) {
        const auto& c = r.config;
        csv::write_row(os, {to_string(c.similarity), to_string(c.metric), c.linkage ? to_string(*c.linkage) : "",
                            to_string(c.algorithm), detail::score_text(r, r.silhouette),
                            detail::score_text(r, r.davies_bouldin),
                            timing && r.status != ScoreRow::Status::not_applicable
                                ? std::to_string(static_cast<long long>(r.runtime_ms))
                                : ""});
    }
}

inline void write_grid_json(std::ostream& os, const GridReport& g, bool timing) {
    auto rows = nlohmann::json::array();
    for (const auto& r : g.rows) {
        const auto& c = r.config;
        nlohmann::json j{{"similarity", to_string(c.similarity)},
                         {"metric", to_string(c.metric)},
                         {"linkage", c.linkage ? to_string(*c.linkage) : ""},
                         {"algorithm", to_string(c.algorithm)},
                         {"silhouette", detail::score_json(r, r.silhouette)},
                         {"davies_bouldin", detail::score_json(r, r.davies_bouldin)}};
        if (timing) j["runtime_ms"] = static_cast<long long>(r.runtime_ms);
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(j);
    }
    nlohmann::json ks = nlohmann::json::object();
    for (const auto& [s, kc] : g.k_choice) {
        ks[to_string(s)] = {{"k", kc.k}, {"k_source", kc.elbow ? "elbow" : "manual"}};
    }
    os << nlohmann::json{{"k", ks}, {"rows", rows}}.dump(2) << '\n';
}

/// Markdown tables laid out as combination label x (K-means, AGNES, hybrid) columns; the
/// K-means value repeats down each linkage block.
inline void write_grid_markdown(std::ostream& os, const GridReport& g) {
    auto find = [&](Similarity s, Metric m, std::optional<Linkage> l, Algorithm a) -> const ScoreRow* {
        for (const auto& r : g.rows) {
            const auto& c = r.config;
            if (c.similarity == s && c.metric == m && c.algorithm == a
                && (a == Algorithm::kmeans || c.linkage == l)) {
                return &r;
            }
        }
        return nullptr;
    };
    for (auto [title, dbi] : {std::pair{"Silhouette coefficient", false}, std::pair{"Davies-Bouldin index", true}}) {
        for (auto s : all_similarities) {
            const auto& kc = g.k_choice.at(s);
            os << "### " << title << ", " << detail::display_name(s) << " (k = " << kc.k
               << (kc.elbow ? ", elbow" : ", manual") << ")\n\n";
            os << "| Combination | Standard K-Means Clustering | Standard Agglomerative Clustering "
                  "| Efficient Agglomerative Hierarchical Clustering |\n";
            os << "|---|---|---|---|\n";
            for (auto l : all_linkages) {
                for (auto m : all_metrics) {
                    os << "| " << detail::display_name(s) << ", " << detail::display_name(m) << ", "
                       << detail::display_name(l) << ", " << title << " |";
                    for (auto a : {Algorithm::kmeans, Algorithm::agnes, Algorithm::efficient}) {
                        const ScoreRow* r = find(s, m, l, a);
                        os << ' ' << (r ? detail::score_text(*r, dbi ? r->davies_bouldin : r->silhouette) : "") << " |";
                    }
                    os << '\n';
                }
            }
            os << '\n';
        }
    }
}

} // namespace ctaclust

#endif
