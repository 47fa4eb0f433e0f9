// ctaclust command-line front end: run, grid, elbow, report.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ctaclust/ctaclust.hpp"

namespace {

using namespace ctaclust;

struct CommonArgs {
    std::string corpus;
    std::string manifest;
    std::string out = "out";
    std::string stopwords;
    std::string similarity = "cosine";
    std::string metric = "euclidean";
    double minkowski_p = 2.0;
    std::string linkage;
    std::string algo = "efficient";
    std::optional<std::size_t> k;
    std::size_t k_max = 20;
    double max_df = 0.8;
    std::size_t min_df = 1;
    std::optional<std::size_t> cut;
    std::optional<std::size_t> k_mid;
    std::optional<double> max_height;
    std::uint64_t seed = 42;
    std::size_t jobs = 1;
    std::string format = "csv";
    std::string space = "distance_rows";
    std::string init = "random";
    std::size_t max_iter = 300;
    bool timing = false;
    bool quiet = false;
};

void add_corpus_options(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("corpus", a.corpus, "Directory of .txt reports (optional manifest.csv)")->required();
    cmd->add_option("--manifest", a.manifest, "Manifest CSV (default: <corpus>/manifest.csv when present)");
    cmd->add_option("--stopwords", a.stopwords, "Stopword file, one word per line, # comments");
    cmd->add_option("--max-df", a.max_df, "Drop terms present in more than this fraction of documents")
        ->capture_default_str();
    cmd->add_option("--min-df", a.min_df, "Drop terms present in fewer documents")->capture_default_str();
    cmd->add_option("--out", a.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", a.seed, "Master random seed")->capture_default_str();
    cmd->add_option("--jobs", a.jobs, "Worker threads")->capture_default_str();
    cmd->add_option("--k-max", a.k_max, "Largest k for the elbow scan")->capture_default_str();
    cmd->add_option("--kmeans-space", a.space, "Feature space: distance_rows or tfidf")->capture_default_str();
    cmd->add_option("--init", a.init, "K-means initialization: random or kmeans++")->capture_default_str();
    cmd->add_option("--max-iter", a.max_iter, "K-means iteration cap")->capture_default_str();
    cmd->add_flag("--quiet", a.quiet, "Suppress warnings");
}

void add_cluster_options(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--minkowski-p", a.minkowski_p, "Minkowski exponent")->capture_default_str();
    cmd->add_option("--k", a.k, "Number of clusters (skips the elbow scan)");
    cmd->add_option("--cut", a.cut, "Clusters to cut hierarchical results at (default: k)");
    cmd->add_option("--k-mid", a.k_mid, "Middle-level clusters for the hybrid (default: min(n, max(2k, cut)))");
    cmd->add_option("--format", a.format, "Tabular artifact format: csv or json")->capture_default_str();
    cmd->add_flag("--timing", a.timing, "Record wall-clock runtime in the outputs");
}

RunConfig make_config(const CommonArgs& a) {
    RunConfig c;
    c.similarity = parse_similarity(a.similarity);
    c.metric = parse_metric(a.metric);
    c.minkowski_p = a.minkowski_p;
    if (!a.linkage.empty()) c.linkage = parse_linkage(a.linkage);
    c.algorithm = parse_algorithm(a.algo);
    c.k = a.k;
    c.k_max = a.k_max;
    c.max_df = a.max_df;
    c.min_df = a.min_df;
    c.seed = a.seed;
    c.cut = a.cut;
    c.k_mid = a.k_mid;
    c.max_height = a.max_height;
    c.space = parse_feature_space(a.space);
    if (a.init == "random") {
        c.init = InitMethod::random;
    } else if (a.init == "kmeans++") {
        c.init = InitMethod::kmeans_plus_plus;
    } else {
        fail(ErrorCode::InvalidConfig, "unknown init '" + a.init + "'");
    }
    c.max_iter = a.max_iter;
    return c;
}

OutputFormat make_format(const std::string& f) {
    if (f == "csv") return OutputFormat::csv;
    if (f == "json") return OutputFormat::json;
    fail(ErrorCode::InvalidConfig, "unknown format '" + f + "'");
}

Workspace load(const CommonArgs& a, const RunConfig& cfg) {
    auto stop = a.stopwords.empty() ? default_stopwords() : load_stopwords(a.stopwords);
    std::optional<fs::path> manifest;
    if (!a.manifest.empty()) manifest = a.manifest;
    return prepare(load_corpus(a.corpus, manifest), stop, cfg.max_df, cfg.min_df);
}

int cmd_run(const CommonArgs& a) {
    auto cfg = make_config(a);
    cfg.validate();
    RunOptions opt{make_format(a.format), a.timing, a.jobs};
    auto ws = load(a, cfg);
    auto s = run_pipeline(ws, cfg, a.out, opt);
    std::cout << to_string(cfg.algorithm) << ": " << s.cell.clustering.n_clusters << " clusters (k = "
              << s.cell.k << (s.k_choice.elbow ? ", elbow" : ", manual") << "), silhouette "
              << csv::format_double(s.cell.scores.silhouette) << ", Davies-Bouldin "
              << csv::format_double(s.cell.scores.davies_bouldin) << '\n';
    for (const auto& name : s.artifacts) {
        std::cout << "  wrote " << (fs::path(a.out) / name).string() << '\n';
    }
    return 0;
}

int cmd_grid(const CommonArgs& a) {
    CommonArgs base_args = a;
    base_args.linkage.clear();
    auto base = make_config(base_args);
    base.algorithm = Algorithm::kmeans;
    base.validate();
    const auto format = make_format(a.format);
    auto ws = load(a, base);
    auto report = run_grid(ws, GridOptions{base, a.jobs});

    ArtifactStage stage(a.out);
    if (format == OutputFormat::json) {
        stage.write("grid.json", [&](std::ostream& os) { write_grid_json(os, report, a.timing); });
    } else {
        stage.write("grid.csv", [&](std::ostream& os) { write_grid_csv(os, report, a.timing); });
    }
    stage.write("grid.md", [&](std::ostream& os) { write_grid_markdown(os, report); });
    stage.commit();

    std::size_t na = 0, failed = 0;
    for (const auto& r : report.rows) {
        na += r.status == ScoreRow::Status::not_applicable;
        failed += r.status == ScoreRow::Status::failed;
    }
    std::cout << "grid: " << report.rows.size() << " cells (" << na << " N.A, " << failed << " failed)\n";
    for (const auto& name : stage.names()) {
        std::cout << "  wrote " << (fs::path(a.out) / name).string() << '\n';
    }
    return 0;
}

int cmd_elbow(const CommonArgs& a) {
    CommonArgs args = a;
    args.linkage.clear();
    auto cfg = make_config(args);
    cfg.algorithm = Algorithm::kmeans;
    cfg.k.reset();
    cfg.validate();
    auto ws = load(a, cfg);
    auto dist = distance_matrix(ws.tfidf, cfg.similarity, a.jobs);
    auto choice = choose_k(feature_matrix(ws, dist, cfg.space), cfg);
    const auto format = make_format(a.format);
    ArtifactStage stage(a.out);
    stage.write(format == OutputFormat::json ? "elbow.json" : "elbow.csv",
                [&](std::ostream& os) { write_elbow(os, *choice.elbow, format); });
    stage.commit();
    std::cout << "elbow: chosen k = " << choice.k << '\n';
    return 0;
}

int cmd_report(const CommonArgs& a) {
    auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) fail(ErrorCode::MissingFile, p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return csv::parse(ss.str());
    };
    auto groups = read(fs::path(a.out) / "groups.csv");
    auto terms = read(fs::path(a.out) / "top_terms.csv");
    std::ostringstream md;
    md << "## Overview of cyber threat actor groups\n\n";
    render_group_report(md, groups, terms);
    ArtifactStage stage(a.out);
    stage.write("groups.md", [&](std::ostream& os) { os << md.str(); });
    stage.commit();
    std::cout << md.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ctaclust: cluster threat-actor reports with K-means, AGNES and the K-means-seeded hybrid"};
    app.require_subcommand(1);
    CommonArgs args;

    auto* run = app.add_subcommand("run", "Cluster a corpus with one configuration and export artifacts");
    add_corpus_options(run, args);
    add_cluster_options(run, args);
    run->add_option("--similarity", args.similarity, "cosine or jaccard")->capture_default_str();
    run->add_option("--metric", args.metric, "euclidean, manhattan, canberra or minkowski")->capture_default_str();
    run->add_option("--linkage", args.linkage, "ward, single, complete, average or centroid");
    run->add_option("--algo", args.algo, "kmeans, agnes or efficient")->capture_default_str();
    run->add_option("--max-height", args.max_height, "Stop AGNES once the closest pair exceeds this distance");

    auto* grid = app.add_subcommand("grid", "Score every similarity x metric x linkage x algorithm cell");
    add_corpus_options(grid, args);
    add_cluster_options(grid, args);

    auto* elbow = app.add_subcommand("elbow", "Write the WCSS-vs-k curve and the chosen k");
    add_corpus_options(elbow, args);
    elbow->add_option("--similarity", args.similarity, "cosine or jaccard")->capture_default_str();
    elbow->add_option("--format", args.format, "csv or json")->capture_default_str();

    auto* report = app.add_subcommand("report", "Render groups.csv/top_terms.csv from a run as markdown");
    report->add_option("--out", args.out, "Directory of a previous run")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (args.quiet) {
        diag::set_warning_handler(nullptr);
    }
    try {
        if (*run) return cmd_run(args);
        if (*grid) return cmd_grid(args);
        if (*elbow) return cmd_elbow(args);
        if (*report) return cmd_report(args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_status(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
