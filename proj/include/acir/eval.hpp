#pragma once
// Reenactment harness and metrics: issue-to-changeset linking, gold
// derivation, effectiveness / MRR / MAP, and the Case I/II effort
// adjustments for mismatched granularities.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "acir/corpus.hpp"
#include "acir/errors.hpp"
#include "acir/index.hpp"
#include "acir/vcs.hpp"

namespace acir {

inline constexpr int kNotFound = -1;

struct GoldLocation {
    std::string path;
    std::optional<std::string> method;  // simple name
    std::optional<int> arity;
    std::optional<int> line;
};

struct EvalCase {
    std::string case_id;
    std::string query_text;
    ChangesetId threshold;  // the fix changeset
    std::vector<GoldLocation> gold;
};

struct QueryResult {
    std::string case_id;
    int effectiveness = kNotFound;  // 1-based rank, or kNotFound
    double reciprocal_rank = 0.0;
    double average_precision = 0.0;
    int retrieved_count = 0;
    bool unmappable = false;
    std::string error;  // non-empty when the per-case build failed
};

struct EffectivenessSummary {
    int min = 0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    int max = 0;
    double mean = 0.0;  // over found cases
};

struct MetricsReport {
    CorpusConfig config;
    std::vector<QueryResult> per_case;
    double mrr = 0.0;
    double map = 0.0;
    EffectivenessSummary effectiveness;
    int not_found_count = 0;
    int unmappable_case_count = 0;
};

// Changesets whose description mentions the issue id as a standalone
// number or as "bug <id>", "issue <id>", "#<id>"; word-boundary
// delimited, case-insensitive; newest first.
inline std::vector<ChangesetId> link_issue_to_changesets(const Repository& handle,
                                                         const std::string& issue_id) {
    std::string escaped;
    for (char c : issue_id) {
        if (!std::isalnum(static_cast<unsigned char>(c))) escaped.push_back('\\');
        escaped.push_back(c);
    }
    std::regex pattern("(^|[^A-Za-z0-9])(bug |issue |#)?" + escaped + "($|[^A-Za-z0-9])",
                       std::regex::icase);
    std::vector<ChangesetId> out;
    for (const auto& cs : handle.list_changesets())
        if (std::regex_search(cs.description, pattern)) out.push_back(cs.id);
    return out;
}

// Gold artifacts at the pinned revision: those whose spans contain
// lines modified by any fix changeset. Locations that no longer map
// to an artifact are dropped and counted.
struct GoldDerivation {
    std::set<std::string> artifact_ids;
    int unmappable_locations = 0;
};

inline GoldDerivation derive_gold(const std::vector<ChangesetId>& fix_changesets,
                                  const Repository& handle,
                                  const std::vector<Artifact>& artifacts) {
    GoldDerivation result;
    std::map<std::string, std::vector<const Artifact*>> by_path;
    for (const auto& a : artifacts) by_path[a.path].push_back(&a);

    for (const auto& fix : fix_changesets) {
        for (const auto& [path, line] : handle.changed_lines(fix)) {
            auto it = by_path.find(path);
            bool mapped = false;
            if (it != by_path.end()) {
                for (const Artifact* a : it->second) {
                    if (line >= a->start_line && line <= a->end_line) {
                        result.artifact_ids.insert(a->id);
                        mapped = true;
                    }
                }
            }
            if (!mapped) ++result.unmappable_locations;
        }
    }
    return result;
}

// 1-based rank of the first retrieved gold artifact.
inline int effectiveness(const RankedList& ranked, const std::set<std::string>& gold) {
    for (size_t i = 0; i < ranked.size(); ++i)
        if (gold.count(ranked[i].artifact_id)) return static_cast<int>(i) + 1;
    return kNotFound;
}

// Mean reciprocal rank; a miss contributes 0.
inline double mrr(const std::vector<QueryResult>& results) {
    if (results.empty())
        throw EmptyResultSet();
    double sum = 0.0;
    for (const auto& r : results) sum += r.reciprocal_rank;
    return sum / static_cast<double>(results.size());
}

// Average of precision@rank over the gold items found; gold items
// never retrieved contribute 0.
inline double average_precision(const RankedList& ranked, const std::set<std::string>& gold) {
    if (gold.empty()) return 0.0;
    double sum = 0.0;
    int relevant_seen = 0;
    for (size_t i = 0; i < ranked.size(); ++i) {
        if (gold.count(ranked[i].artifact_id)) {
            ++relevant_seen;
            sum += static_cast<double>(relevant_seen) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(gold.size());
}

// Case I: method-level results judged against file-level intent. Each
// distinct incorrect file counts once; the answer is 1 + the number of
// distinct incorrect files seen before the first method of a gold file.
inline int effort_case_one(const RankedList& method_ranked,
                           const std::set<std::string>& gold_files,
                           const std::map<std::string, std::string>& method_to_file) {
    std::set<std::string> incorrect_seen;
    for (const auto& entry : method_ranked) {
        auto it = method_to_file.find(entry.artifact_id);
        if (it == method_to_file.end()) continue;
        if (gold_files.count(it->second))
            return static_cast<int>(incorrect_seen.size()) + 1;
        incorrect_seen.insert(it->second);
    }
    return kNotFound;
}

// Case II: file-level results judged against method-level intent. The
// user reads methods in source order, so the cost is all methods of
// files ranked above the gold file plus the gold method's 1-based
// position within its file.
inline int effort_case_two(const RankedList& file_ranked, const std::string& gold_file,
                           const std::map<std::string, int>& methods_per_file,
                           int gold_position_in_file) {
    int traversed = 0;
    for (const auto& entry : file_ranked) {
        if (entry.artifact_id == gold_file)
            return traversed + gold_position_in_file;
        auto it = methods_per_file.find(entry.artifact_id);
        traversed += it != methods_per_file.end() ? it->second : 0;
    }
    return kNotFound;
}

namespace detail {

// Linear-interpolation quantile over a sorted sample.
inline double quantile(const std::vector<int>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    double pos = p * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return static_cast<double>(sorted[lo]) * (1.0 - frac) +
           static_cast<double>(sorted[hi]) * frac;
}

inline std::set<std::string> map_gold_locations(const EvalCase& eval_case,
                                                const std::vector<Artifact>& artifacts,
                                                Granularity granularity) {
    std::set<std::string> gold_ids;
    for (const auto& loc : eval_case.gold) {
        for (const auto& a : artifacts) {
            if (a.path != loc.path) continue;
            if (granularity == Granularity::File) {
                gold_ids.insert(a.id);
                continue;
            }
            if (loc.method) {
                std::string want = *loc.method + "/";
                if (loc.arity) want += std::to_string(*loc.arity);
                if (a.name.rfind(want, 0) == 0 &&
                    (loc.arity || a.name.find('/') == loc.method->size()))
                    gold_ids.insert(a.id);
            } else if (loc.line) {
                if (*loc.line >= a.start_line && *loc.line <= a.end_line)
                    gold_ids.insert(a.id);
            } else {
                // Path-only location: every method of the file is gold.
                gold_ids.insert(a.id);
            }
        }
    }
    return gold_ids;
}

}  // namespace detail

// Replays every case: index the history before the case's threshold,
// query with the request text, score against the gold artifacts.
// Indexes are cached per (threshold, granularity, range_mode).
inline MetricsReport run_reenactment(const std::vector<EvalCase>& cases,
                                     const CorpusConfig& base_config,
                                     const PipelineConfig& pipeline, const Repository& handle,
                                     const std::string& index_cache_dir = "") {
    if (cases.empty())
        throw EmptyCaseSet();
    if (!index_cache_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(index_cache_dir, ec);
    }

    MetricsReport report;
    report.config = base_config;

    struct CacheEntry {
        Index index;
        std::vector<Artifact> artifacts;
    };
    std::map<std::tuple<std::string, Granularity, RangeMode>, CacheEntry> cache;

    std::vector<int> found_ranks;
    std::vector<QueryResult> scored;

    for (const auto& eval_case : cases) {
        QueryResult qr;
        qr.case_id = eval_case.case_id;
        try {
            auto key = std::make_tuple(eval_case.threshold, base_config.granularity,
                                       base_config.range_mode);
            auto it = cache.find(key);
            if (it == cache.end()) {
                CorpusConfig cfg = base_config;
                cfg.threshold = eval_case.threshold;
                CacheEntry entry;
                entry.artifacts =
                    partition(handle, cfg.granularity, cfg.file_filter).artifacts;

                std::string cache_file;
                if (!index_cache_dir.empty()) {
                    cache_file = index_cache_dir + "/" +
                                 sha256_hex(eval_case.threshold + "|" +
                                            to_string(cfg.granularity) + "|" +
                                            to_string(cfg.range_mode)) +
                                 ".json";
                }
                bool loaded = false;
                if (!cache_file.empty()) {
                    try {
                        entry.index = load_index(cache_file);
                        loaded = true;
                    } catch (const Error&) {
                        // absent or stale; rebuild below
                    }
                }
                if (!loaded) {
                    Corpus corpus = build_corpus(cfg, handle);
                    entry.index = index_corpus(corpus, pipeline);
                    if (!cache_file.empty()) save_index(entry.index, cache_file);
                }
                it = cache.emplace(key, std::move(entry)).first;
            }

            std::set<std::string> gold_ids = detail::map_gold_locations(
                eval_case, it->second.artifacts, base_config.granularity);
            if (gold_ids.empty()) {
                qr.unmappable = true;
                ++report.unmappable_case_count;
                report.per_case.push_back(std::move(qr));
                continue;
            }

            RankedList ranked = search(it->second.index, eval_case.query_text, -1, pipeline);
            qr.retrieved_count = static_cast<int>(ranked.size());
            qr.effectiveness = effectiveness(ranked, gold_ids);
            qr.reciprocal_rank =
                qr.effectiveness == kNotFound ? 0.0 : 1.0 / qr.effectiveness;
            qr.average_precision = average_precision(ranked, gold_ids);
            if (qr.effectiveness == kNotFound)
                ++report.not_found_count;
            else
                found_ranks.push_back(qr.effectiveness);
            scored.push_back(qr);
        } catch (const Error& e) {
            qr.error = e.what();
        }
        report.per_case.push_back(std::move(qr));
    }

    if (!scored.empty()) {
        report.mrr = mrr(scored);
        double ap_sum = 0.0;
        for (const auto& r : scored) ap_sum += r.average_precision;
        report.map = ap_sum / static_cast<double>(scored.size());
    }

    if (!found_ranks.empty()) {
        std::sort(found_ranks.begin(), found_ranks.end());
        report.effectiveness.min = found_ranks.front();
        report.effectiveness.max = found_ranks.back();
        report.effectiveness.q1 = detail::quantile(found_ranks, 0.25);
        report.effectiveness.median = detail::quantile(found_ranks, 0.5);
        report.effectiveness.q3 = detail::quantile(found_ranks, 0.75);
        double sum = 0.0;
        for (int r : found_ranks) sum += r;
        report.effectiveness.mean = sum / static_cast<double>(found_ranks.size());
    }
    return report;
}

}  // namespace acir
