#pragma once
// Annotate artifacts with their deduplicated, threshold-filtered
// changeset sets and assemble the document collection.

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acir/errors.hpp"
#include "acir/partition.hpp"
#include "acir/text.hpp"
#include "acir/vcs.hpp"

namespace acir {

enum class RangeMode { Recent, All };

inline const char* to_string(RangeMode r) {
    return r == RangeMode::Recent ? "recent" : "all";
}

struct CorpusConfig {
    Granularity granularity = Granularity::Method;
    RangeMode range_mode = RangeMode::All;
    std::string revision;
    std::optional<ChangesetId> threshold;
    std::vector<std::string> file_filter = {"**/*.java"};
};

struct Document {
    Artifact artifact;
    std::set<ChangesetId> changeset_ids;
    std::string raw_text;  // descriptions newest-first, newline separated
    std::vector<std::string> terms;
};

struct SkippedCounts {
    int empty_documents = 0;
    int unparseable_files = 0;
};

struct Corpus {
    CorpusConfig config;
    std::vector<Document> documents;
    SkippedCounts skipped;
};

struct CorpusStats {
    int file_count = 0;
    int method_count = 0;
    double avg_distinct_changesets_per_artifact = 0.0;  // 2 decimals
    long total_loc = 0;
};

// The changesets describing one artifact. RECENT takes each owned
// line's most recent changeset (blame); ALL takes every historical
// changeset of the owned line ranges. A changeset is counted once per
// artifact even when it touched many lines.
inline std::set<ChangesetId> annotate_artifact(
    const Artifact& artifact, const CorpusConfig& config, const Repository& vcs,
    const std::vector<Artifact>& siblings,
    const std::vector<ChangesetId>* blame_cache = nullptr) {
    std::vector<int> lines = owned_lines(artifact, siblings);
    std::set<ChangesetId> ids;
    if (config.range_mode == RangeMode::Recent) {
        std::vector<ChangesetId> blame;
        if (blame_cache == nullptr) {
            blame = vcs.blame_lines(artifact.path);
            blame_cache = &blame;
        }
        for (int k : lines)
            if (k - 1 < static_cast<int>(blame_cache->size()))
                ids.insert((*blame_cache)[static_cast<size_t>(k - 1)]);
    } else {
        // Query contiguous owned runs to keep the number of history
        // walks small.
        size_t i = 0;
        while (i < lines.size()) {
            size_t j = i;
            while (j + 1 < lines.size() && lines[j + 1] == lines[j] + 1) ++j;
            auto part = vcs.line_range_history(artifact.path, lines[i], lines[j]);
            ids.insert(part.begin(), part.end());
            i = j + 1;
        }
    }
    if (config.threshold) {
        std::set<ChangesetId> allowed = vcs.strict_ancestors(*config.threshold);
        std::set<ChangesetId> filtered;
        for (const auto& id : ids)
            if (allowed.count(id)) filtered.insert(id);
        ids = std::move(filtered);
    }
    return ids;
}

// Partition, annotate every artifact, assemble document text.
// Artifacts with an empty changeset set or all-empty descriptions are
// dropped and counted.
inline Corpus build_corpus(const CorpusConfig& config, const Repository& vcs) {
    Corpus corpus;
    corpus.config = config;
    PartitionResult parts = partition(vcs, config.granularity, config.file_filter);
    corpus.skipped.unparseable_files = static_cast<int>(parts.unparseable_files.size());

    std::optional<std::set<ChangesetId>> allowed;
    if (config.threshold)
        allowed = vcs.strict_ancestors(*config.threshold);

    // Description lookup in newest-first history order.
    std::vector<Changeset> history = vcs.list_changesets();
    std::map<ChangesetId, size_t> order;
    for (size_t i = 0; i < history.size(); ++i)
        order[history[i].id] = i;

    std::map<std::string, std::vector<ChangesetId>> blame_by_file;

    for (const auto& artifact : parts.artifacts) {
        CorpusConfig unfiltered = config;
        unfiltered.threshold.reset();

        const std::vector<ChangesetId>* blame = nullptr;
        if (config.range_mode == RangeMode::Recent) {
            auto it = blame_by_file.find(artifact.path);
            if (it == blame_by_file.end())
                it = blame_by_file.emplace(artifact.path, vcs.blame_lines(artifact.path)).first;
            blame = &it->second;
        }

        std::set<ChangesetId> ids =
            annotate_artifact(artifact, unfiltered, vcs, parts.artifacts, blame);
        if (allowed) {
            std::set<ChangesetId> filtered;
            for (const auto& id : ids)
                if (allowed->count(id)) filtered.insert(id);
            ids = std::move(filtered);
        }

        if (ids.empty()) {
            ++corpus.skipped.empty_documents;
            continue;
        }

        // Newest-first concatenation of descriptions.
        std::vector<ChangesetId> sorted(ids.begin(), ids.end());
        std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
            return order.at(a) < order.at(b);
        });
        std::string raw;
        bool any_text = false;
        for (const auto& id : sorted) {
            const std::string& desc = history[order.at(id)].description;
            if (!desc.empty()) any_text = true;
            if (!raw.empty()) raw.push_back('\n');
            raw += desc;
        }
        if (!any_text) {
            ++corpus.skipped.empty_documents;
            continue;
        }

        Document doc;
        doc.artifact = artifact;
        doc.changeset_ids = std::move(ids);
        doc.raw_text = std::move(raw);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

inline CorpusStats corpus_stats(const Corpus& corpus) {
    if (corpus.documents.empty())
        throw EmptyCorpus();
    CorpusStats stats;
    std::set<std::string> files;
    long changeset_total = 0;
    for (const auto& doc : corpus.documents) {
        files.insert(doc.artifact.path);
        changeset_total += static_cast<long>(doc.changeset_ids.size());
        stats.total_loc += doc.artifact.end_line - doc.artifact.start_line + 1;
        if (doc.artifact.granularity == Granularity::Method) ++stats.method_count;
    }
    stats.file_count = static_cast<int>(files.size());
    double avg = static_cast<double>(changeset_total) /
                 static_cast<double>(corpus.documents.size());
    // Reported to 2 decimals.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", avg);
    stats.avg_distinct_changesets_per_artifact = std::stod(buf);
    return stats;
}

}  // namespace acir
