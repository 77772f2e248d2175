#pragma once
// Vector space model over the corpus: TF-IDF weighting with
// tf = raw count, idf = ln(N/df), cosine similarity, and a
// checksummed JSON index file format.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acir/corpus.hpp"
#include "acir/errors.hpp"
#include "acir/sha256.hpp"
#include "acir/text.hpp"

namespace acir {

inline constexpr int kIndexFormatVersion = 1;

struct Index {
    int document_count = 0;                       // N
    std::map<std::string, int> vocabulary;        // term -> term id
    std::vector<int> df;                          // term id -> document frequency
    std::vector<std::vector<std::pair<int, int>>> postings;  // term id -> (doc id, tf)
    std::vector<double> doc_norms;                // doc id -> ||tf*idf vector||
    std::vector<std::string> doc_artifact_ids;    // doc id -> artifact id
    CorpusConfig config;
    PipelineConfig pipeline;
    int skipped_zero_norm = 0;
    bool degenerate = false;  // every idf is zero; nothing retrievable

    double idf(int term_id) const {
        return std::log(static_cast<double>(document_count) / df[static_cast<size_t>(term_id)]);
    }

    bool operator==(const Index& other) const {
        return document_count == other.document_count && vocabulary == other.vocabulary &&
               df == other.df && postings == other.postings && doc_norms == other.doc_norms &&
               doc_artifact_ids == other.doc_artifact_ids;
    }
};

struct RankedEntry {
    std::string artifact_id;
    double score = 0.0;

    bool operator==(const RankedEntry&) const = default;
};

using RankedList = std::vector<RankedEntry>;

inline Index index_corpus(const Corpus& corpus, const PipelineConfig& pipeline) {
    if (corpus.documents.empty())
        throw EmptyCorpus();

    Index index;
    index.config = corpus.config;
    index.pipeline = pipeline;
    index.document_count = static_cast<int>(corpus.documents.size());

    // First pass: term counts per document, vocabulary in first-seen
    // order of (document order, term position).
    std::vector<std::map<int, int>> doc_tf(corpus.documents.size());
    for (size_t d = 0; d < corpus.documents.size(); ++d) {
        for (const std::string& term : preprocess(corpus.documents[d].raw_text, pipeline)) {
            auto [it, inserted] =
                index.vocabulary.emplace(term, static_cast<int>(index.vocabulary.size()));
            ++doc_tf[d][it->second];
        }
        index.doc_artifact_ids.push_back(corpus.documents[d].artifact.id);
    }

    size_t vocab_size = index.vocabulary.size();
    index.df.assign(vocab_size, 0);
    index.postings.assign(vocab_size, {});
    for (size_t d = 0; d < doc_tf.size(); ++d) {
        for (const auto& [term_id, tf] : doc_tf[d]) {
            ++index.df[static_cast<size_t>(term_id)];
            index.postings[static_cast<size_t>(term_id)].emplace_back(static_cast<int>(d), tf);
        }
    }

    index.doc_norms.assign(corpus.documents.size(), 0.0);
    for (size_t d = 0; d < doc_tf.size(); ++d) {
        double sum = 0.0;
        for (const auto& [term_id, tf] : doc_tf[d]) {
            double w = tf * index.idf(term_id);
            sum += w * w;
        }
        index.doc_norms[d] = std::sqrt(sum);
        if (index.doc_norms[d] == 0.0) ++index.skipped_zero_norm;
    }
    index.degenerate = index.skipped_zero_norm == index.document_count;
    return index;
}

// Cosine-scored retrieval. Unknown query terms are dropped; documents
// with zero norm are unretrievable; only score > 0 entries appear,
// ordered by descending score with ascending artifact id tie-break.
inline RankedList search(const Index& index, const std::string& query_text, int top_k,
                         const PipelineConfig& pipeline) {
    std::map<int, int> query_tf;
    for (const std::string& term : preprocess(query_text, pipeline)) {
        auto it = index.vocabulary.find(term);
        if (it != index.vocabulary.end()) ++query_tf[it->second];
    }

    double query_norm_sq = 0.0;
    for (const auto& [term_id, tf] : query_tf) {
        double w = tf * index.idf(term_id);
        query_norm_sq += w * w;
    }
    if (query_norm_sq == 0.0) return {};
    double query_norm = std::sqrt(query_norm_sq);

    std::vector<double> dot(index.doc_norms.size(), 0.0);
    for (const auto& [term_id, q_tf] : query_tf) {
        double idf = index.idf(term_id);
        double qw = q_tf * idf;
        for (const auto& [doc_id, d_tf] : index.postings[static_cast<size_t>(term_id)])
            dot[static_cast<size_t>(doc_id)] += qw * d_tf * idf;
    }

    RankedList results;
    for (size_t d = 0; d < dot.size(); ++d) {
        if (dot[d] <= 0.0 || index.doc_norms[d] == 0.0) continue;
        results.push_back({index.doc_artifact_ids[d], dot[d] / (index.doc_norms[d] * query_norm)});
    }
    std::sort(results.begin(), results.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.artifact_id < b.artifact_id;
    });
    if (top_k >= 0 && results.size() > static_cast<size_t>(top_k))
        results.resize(static_cast<size_t>(top_k));
    return results;
}

namespace detail {

inline nlohmann::ordered_json index_payload(const Index& index) {
    nlohmann::ordered_json j;
    j["format_version"] = kIndexFormatVersion;

    nlohmann::ordered_json cfg;
    cfg["granularity"] = to_string(index.config.granularity);
    cfg["range_mode"] = to_string(index.config.range_mode);
    cfg["revision"] = index.config.revision;
    cfg["threshold"] = index.config.threshold ? nlohmann::ordered_json(*index.config.threshold)
                                             : nlohmann::ordered_json(nullptr);
    cfg["file_filter"] = index.config.file_filter;
    cfg["stopwords"] = std::vector<std::string>(index.pipeline.stopwords.begin(),
                                                index.pipeline.stopwords.end());
    cfg["split_compound_identifiers"] = index.pipeline.split_compound_identifiers;
    cfg["min_token_length"] = index.pipeline.min_token_length;
    j["config_echo"] = std::move(cfg);

    nlohmann::ordered_json docs = nlohmann::ordered_json::array();
    for (size_t d = 0; d < index.doc_artifact_ids.size(); ++d) {
        nlohmann::ordered_json doc;
        doc["id"] = d;
        doc["artifact"] = index.doc_artifact_ids[d];
        doc["norm"] = index.doc_norms[d];
        docs.push_back(std::move(doc));
    }
    j["documents"] = std::move(docs);

    // Vocabulary ordered by term id.
    std::vector<const std::string*> terms(index.vocabulary.size());
    for (const auto& [term, id] : index.vocabulary)
        terms[static_cast<size_t>(id)] = &term;
    nlohmann::ordered_json vocab = nlohmann::ordered_json::array();
    for (size_t t = 0; t < terms.size(); ++t) {
        nlohmann::ordered_json entry;
        entry["term"] = *terms[t];
        entry["df"] = index.df[t];
        vocab.push_back(std::move(entry));
    }
    j["vocabulary"] = std::move(vocab);

    nlohmann::ordered_json postings = nlohmann::ordered_json::array();
    for (size_t t = 0; t < index.postings.size(); ++t) {
        nlohmann::ordered_json plist = nlohmann::ordered_json::array();
        for (const auto& [doc_id, tf] : index.postings[t])
            plist.push_back(nlohmann::ordered_json::array({doc_id, tf}));
        postings.push_back(nlohmann::ordered_json::array({t, std::move(plist)}));
    }
    j["postings"] = std::move(postings);
    return j;
}

}  // namespace detail

inline void save_index(const Index& index, const std::string& path) {
    nlohmann::ordered_json j = detail::index_payload(index);
    std::string checksum = sha256_hex(j.dump());
    j["checksum"] = checksum;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write index file: " + path);
    out << j.dump(2) << "\n";
    if (!out)
        throw IoError("write failed: " + path);
}

inline Index load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read index file: " + path);
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception&) {
        throw CorruptIndex("index file is not valid JSON: " + path);
    }
    try {
        if (!j.contains("checksum"))
            throw CorruptIndex("index file missing checksum: " + path);
        std::string stored = j["checksum"].get<std::string>();
        j.erase("checksum");
        if (sha256_hex(j.dump()) != stored)
            throw CorruptIndex("index checksum mismatch: " + path);
        int version = j["format_version"].get<int>();
        if (version != kIndexFormatVersion)
            throw FormatVersionMismatch("index format version " + std::to_string(version) +
                                        ", expected " + std::to_string(kIndexFormatVersion));

        Index index;
        const auto& cfg = j["config_echo"];
        index.config.granularity = cfg["granularity"].get<std::string>() == "file"
                                       ? Granularity::File
                                       : Granularity::Method;
        index.config.range_mode =
            cfg["range_mode"].get<std::string>() == "recent" ? RangeMode::Recent : RangeMode::All;
        index.config.revision = cfg["revision"].get<std::string>();
        if (!cfg["threshold"].is_null())
            index.config.threshold = cfg["threshold"].get<std::string>();
        index.config.file_filter = cfg["file_filter"].get<std::vector<std::string>>();
        for (const auto& w : cfg["stopwords"])
            index.pipeline.stopwords.insert(w.get<std::string>());
        index.pipeline.split_compound_identifiers =
            cfg["split_compound_identifiers"].get<bool>();
        index.pipeline.min_token_length = cfg["min_token_length"].get<int>();

        for (const auto& doc : j["documents"]) {
            index.doc_artifact_ids.push_back(doc["artifact"].get<std::string>());
            index.doc_norms.push_back(doc["norm"].get<double>());
        }
        index.document_count = static_cast<int>(index.doc_artifact_ids.size());
        for (const auto& entry : j["vocabulary"]) {
            int id = static_cast<int>(index.vocabulary.size());
            index.vocabulary.emplace(entry["term"].get<std::string>(), id);
            index.df.push_back(entry["df"].get<int>());
        }
        index.postings.assign(index.df.size(), {});
        for (const auto& entry : j["postings"]) {
            size_t term_id = entry[0].get<size_t>();
            for (const auto& p : entry[1])
                index.postings[term_id].emplace_back(p[0].get<int>(), p[1].get<int>());
        }
        for (double norm : index.doc_norms)
            if (norm == 0.0) ++index.skipped_zero_norm;
        index.degenerate = index.skipped_zero_norm == index.document_count;
        return index;
    } catch (const nlohmann::json::exception&) {
        throw CorruptIndex("malformed index content: " + path);
    }
}

}  // namespace acir
