// acir: feature location over git history by changeset descriptions.
//
// Subcommands: index, query, stats, eval, link-issues.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acir/acir.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonOptions {
    std::string repo;
    std::string revision = "HEAD";
    std::string granularity = "method";
    std::string range = "all";
    std::string threshold;
    std::vector<std::string> filter = {"**/*.java"};
    std::string stopword_file;
    bool split_identifiers = false;
    int min_token_length = 1;
};

void add_corpus_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--repo", opt.repo, "Path to the git repository")->required();
    cmd->add_option("--rev", opt.revision, "Revision to pin the snapshot at (default HEAD)");
    cmd->add_option("--granularity", opt.granularity, "Artifact granularity")
        ->check(CLI::IsMember({"file", "method"}));
    cmd->add_option("--range", opt.range, "Changeset range inclusion")
        ->check(CLI::IsMember({"recent", "all"}));
    cmd->add_option("--threshold", opt.threshold,
                    "Changeset whose strict ancestors limit annotation");
    cmd->add_option("--filter", opt.filter, "File glob filter (repeatable)");
    cmd->add_option("--stopwords", opt.stopword_file, "Stopword file path");
    cmd->add_flag("--split-identifiers", opt.split_identifiers,
                  "Split camelCase and snake_case tokens");
    cmd->add_option("--min-token-length", opt.min_token_length, "Minimum token length");
}

acir::CorpusConfig corpus_config(const CommonOptions& opt, const acir::Repository& repo) {
    acir::CorpusConfig cfg;
    cfg.granularity =
        opt.granularity == "file" ? acir::Granularity::File : acir::Granularity::Method;
    cfg.range_mode = opt.range == "recent" ? acir::RangeMode::Recent : acir::RangeMode::All;
    cfg.revision = repo.pinned_revision();
    if (!opt.threshold.empty()) cfg.threshold = opt.threshold;
    cfg.file_filter = opt.filter;
    return cfg;
}

acir::PipelineConfig pipeline_config(const CommonOptions& opt) {
    acir::PipelineConfig cfg;
    std::string path = opt.stopword_file;
    if (const char* env = std::getenv("ACIR_STOPWORDS"))
        path = env;
    cfg.stopwords = path.empty() ? acir::default_stopwords() : acir::load_stopword_file(path);
    cfg.split_compound_identifiers = opt.split_identifiers;
    cfg.min_token_length = opt.min_token_length;
    return cfg;
}

std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    return buf;
}

std::vector<acir::EvalCase> load_cases(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw acir::IoError("cannot read cases file: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw acir::IoError("cases file is not valid JSON: " + std::string(e.what()));
    }
    std::vector<acir::EvalCase> cases;
    for (const auto& c : j) {
        acir::EvalCase ec;
        ec.case_id = c.at("case_id").get<std::string>();
        ec.query_text = c.at("query").get<std::string>();
        ec.threshold = c.at("threshold").get<std::string>();
        for (const auto& g : c.at("gold")) {
            acir::GoldLocation loc;
            loc.path = g.at("path").get<std::string>();
            if (g.contains("method")) loc.method = g["method"].get<std::string>();
            if (g.contains("arity")) loc.arity = g["arity"].get<int>();
            if (g.contains("line")) loc.line = g["line"].get<int>();
            ec.gold.push_back(std::move(loc));
        }
        cases.push_back(std::move(ec));
    }
    return cases;
}

ordered_json report_json(const acir::MetricsReport& report) {
    ordered_json j;
    ordered_json cfg;
    cfg["granularity"] = acir::to_string(report.config.granularity);
    cfg["range_mode"] = acir::to_string(report.config.range_mode);
    cfg["revision"] = report.config.revision;
    j["config"] = std::move(cfg);
    j["mrr"] = report.mrr;
    j["map"] = report.map;
    ordered_json eff;
    eff["min"] = report.effectiveness.min;
    eff["q1"] = report.effectiveness.q1;
    eff["median"] = report.effectiveness.median;
    eff["q3"] = report.effectiveness.q3;
    eff["max"] = report.effectiveness.max;
    eff["mean"] = report.effectiveness.mean;
    j["effectiveness"] = std::move(eff);
    j["not_found_count"] = report.not_found_count;
    j["unmappable_case_count"] = report.unmappable_case_count;
    ordered_json cases = ordered_json::array();
    for (const auto& r : report.per_case) {
        ordered_json c;
        c["case_id"] = r.case_id;
        if (!r.error.empty()) {
            c["error"] = r.error;
        } else if (r.unmappable) {
            c["unmappable"] = true;
        } else {
            c["effectiveness"] =
                r.effectiveness == acir::kNotFound ? ordered_json("not_found")
                                                   : ordered_json(r.effectiveness);
            c["reciprocal_rank"] = r.reciprocal_rank;
            c["average_precision"] = r.average_precision;
            c["retrieved_count"] = r.retrieved_count;
        }
        cases.push_back(std::move(c));
    }
    j["cases"] = std::move(cases);
    return j;
}

std::string report_tsv(const acir::MetricsReport& report) {
    std::string out = "case_id\teffectiveness\trr\tap\n";
    for (const auto& r : report.per_case) {
        if (!r.error.empty() || r.unmappable) continue;
        out += r.case_id + "\t" +
               (r.effectiveness == acir::kNotFound ? "not_found"
                                                   : std::to_string(r.effectiveness)) +
               "\t" + format_score(r.reciprocal_rank) + "\t" +
               format_score(r.average_precision) + "\n";
    }
    return out;
}

int run_index(const CommonOptions& opt, const std::string& out_path) {
    auto repo = acir::Repository::open(opt.repo, opt.revision);
    acir::Corpus corpus = acir::build_corpus(corpus_config(opt, repo), repo);
    acir::Index index = acir::index_corpus(corpus, pipeline_config(opt));
    acir::save_index(index, out_path);
    if (index.degenerate)
        std::cerr << "warning: degenerate index, every term idf is zero\n";
    std::cout << index.document_count << " documents indexed, "
              << corpus.skipped.empty_documents << " empty artifacts skipped\n";
    return 0;
}

int run_query(const std::string& index_path, const std::string& query, int top_k,
              const std::string& format) {
    acir::Index index = acir::load_index(index_path);
    acir::RankedList ranked = acir::search(index, query, top_k, index.pipeline);
    if (format == "json") {
        ordered_json j = ordered_json::array();
        for (size_t i = 0; i < ranked.size(); ++i) {
            ordered_json e;
            e["rank"] = i + 1;
            e["artifact_id"] = ranked[i].artifact_id;
            e["score"] = ranked[i].score;
            j.push_back(std::move(e));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        const char* sep = format == "tsv" ? "\t" : "  ";
        for (size_t i = 0; i < ranked.size(); ++i)
            std::cout << (i + 1) << sep << ranked[i].artifact_id << sep
                      << format_score(ranked[i].score) << "\n";
    }
    return 0;
}

int run_stats(const CommonOptions& opt, const std::string& format) {
    auto repo = acir::Repository::open(opt.repo, opt.revision);
    acir::Corpus corpus = acir::build_corpus(corpus_config(opt, repo), repo);
    acir::CorpusStats stats = acir::corpus_stats(corpus);
    if (format == "json") {
        ordered_json j;
        j["file_count"] = stats.file_count;
        j["method_count"] = stats.method_count;
        j["avg_distinct_changesets_per_artifact"] =
            stats.avg_distinct_changesets_per_artifact;
        j["total_loc"] = stats.total_loc;
        j["skipped_empty_documents"] = corpus.skipped.empty_documents;
        j["skipped_unparseable_files"] = corpus.skipped.unparseable_files;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("files: %d\nmethods: %d\navg distinct changesets per artifact: %.2f\n"
                    "total loc: %ld\nskipped empty: %d\nskipped unparseable: %d\n",
                    stats.file_count, stats.method_count,
                    stats.avg_distinct_changesets_per_artifact, stats.total_loc,
                    corpus.skipped.empty_documents, corpus.skipped.unparseable_files);
    }
    return 0;
}

int run_eval(const CommonOptions& opt, const std::string& cases_path,
             const std::string& out_path, const std::string& format,
             const std::string& cache_dir) {
    auto repo = acir::Repository::open(opt.repo, opt.revision);
    std::vector<acir::EvalCase> cases = load_cases(cases_path);
    acir::MetricsReport report = acir::run_reenactment(
        cases, corpus_config(opt, repo), pipeline_config(opt), repo, cache_dir);

    std::string rendered = format == "tsv" ? report_tsv(report)
                                           : report_json(report).dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw acir::IoError("cannot write report: " + out_path);
        out << rendered;
    }
    if (format == "text") {
        std::printf("cases: %zu  MRR: %.6f  MAP: %.6f  not_found: %d  unmappable: %d\n",
                    report.per_case.size(), report.mrr, report.map,
                    report.not_found_count, report.unmappable_case_count);
    } else if (out_path.empty()) {
        std::cout << rendered;
    }
    return 0;
}

int run_link_issues(const CommonOptions& opt, const std::string& issue) {
    auto repo = acir::Repository::open(opt.repo, opt.revision);
    for (const auto& id : acir::link_issue_to_changesets(repo, issue))
        std::cout << id << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acir - feature location by aggregated changeset descriptions"};
    app.require_subcommand(1);

    CommonOptions index_opt, stats_opt, eval_opt, link_opt;
    std::string index_out, query_index, query_text, query_format = "text";
    std::string stats_format = "text", eval_cases, eval_out, eval_format = "json";
    std::string eval_cache_dir, link_issue;
    int query_top = 10;

    auto* index_cmd = app.add_subcommand("index", "Build and save a search index");
    add_corpus_flags(index_cmd, index_opt);
    index_cmd->add_option("--out", index_out, "Index output file")->required();

    auto* query_cmd = app.add_subcommand("query", "Search a saved index");
    query_cmd->add_option("--index", query_index, "Index file")->required();
    query_cmd->add_option("--query", query_text, "Free-text query")->required();
    query_cmd->add_option("--top", query_top, "Maximum results (default 10)");
    query_cmd->add_option("--format", query_format, "Output format")
        ->check(CLI::IsMember({"text", "tsv", "json"}));

    auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
    add_corpus_flags(stats_cmd, stats_opt);
    stats_cmd->add_option("--format", stats_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* eval_cmd = app.add_subcommand("eval", "Run the reenactment evaluation");
    add_corpus_flags(eval_cmd, eval_opt);
    eval_cmd->add_option("--cases", eval_cases, "Evaluation cases JSON file")->required();
    eval_cmd->add_option("--out", eval_out, "Report output file");
    eval_cmd->add_option("--format", eval_format, "Report format")
        ->check(CLI::IsMember({"text", "tsv", "json"}));
    eval_cmd->add_option("--index-cache", eval_cache_dir,
                         "Directory for persisted per-threshold indexes");

    auto* link_cmd = app.add_subcommand("link-issues",
                                        "List changesets mentioning an issue id");
    link_cmd->add_option("--repo", link_opt.repo, "Path to the git repository")->required();
    link_cmd->add_option("--rev", link_opt.revision, "Revision (default HEAD)");
    link_cmd->add_option("--issue", link_issue, "Issue id to search for")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (index_cmd->parsed()) return run_index(index_opt, index_out);
        if (query_cmd->parsed())
            return run_query(query_index, query_text, query_top, query_format);
        if (stats_cmd->parsed()) return run_stats(stats_opt, stats_format);
        if (eval_cmd->parsed())
            return run_eval(eval_opt, eval_cases, eval_out, eval_format, eval_cache_dir);
        if (link_cmd->parsed()) return run_link_issues(link_opt, link_issue);
    } catch (const acir::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
