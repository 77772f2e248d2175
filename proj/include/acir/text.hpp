#pragma once
// Text preprocessing shared by document indexing and queries:
// special-character splitting, stopword removal, lowercasing and
// Porter stemming applied through one pipeline function.

#include <cctype>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "acir/errors.hpp"
#include "acir/porter.hpp"

namespace acir {

struct PipelineConfig {
    std::set<std::string> stopwords;  // lowercase, no whitespace
    bool split_compound_identifiers = false;
    int min_token_length = 1;
};

// Default English stopword list (the classic minimal list); can be
// replaced via a stopword file.
inline const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an",
        "and", "any", "are", "as", "at", "be", "because", "been", "before",
        "being", "below", "between", "both", "but", "by", "can", "cannot",
        "could", "did", "do", "does", "doing", "down", "during", "each", "few",
        "for", "from", "further", "had", "has", "have", "having", "he", "her",
        "here", "hers", "him", "his", "how", "i", "if", "in", "into", "is",
        "it", "its", "itself", "just", "me", "more", "most", "my", "myself",
        "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or",
        "other", "our", "ours", "out", "over", "own", "same", "she", "should",
        "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
        "then", "there", "these", "they", "this", "those", "through", "to",
        "too", "under", "until", "up", "very", "was", "we", "were", "what",
        "when", "where", "which", "while", "who", "whom", "why", "will",
        "with", "would", "you", "your", "yours"};
    return words;
}

inline PipelineConfig default_pipeline() {
    PipelineConfig cfg;
    cfg.stopwords = default_stopwords();
    return cfg;
}

// Stopword file: one word per line, '#' comment lines ignored,
// case-insensitive.
inline std::set<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::string w = line.substr(start);
        for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(w);
    }
    return words;
}

// Splits on every character that is not a letter or digit, lowercases,
// drops tokens shorter than min_token_length. Optional camel-case and
// underscore splitting before lowercasing. Bytes outside ASCII are
// treated as letters.
inline std::vector<std::string> tokenize(const std::string& text, const PipelineConfig& config) {
    std::vector<std::string> raw;
    std::string cur;
    for (char c : text) {
        unsigned char u = static_cast<unsigned char>(c);
        bool is_word_char = std::isalnum(u) || u >= 0x80;
        if (is_word_char) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            raw.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) raw.push_back(cur);

    std::vector<std::string> pieces;
    if (config.split_compound_identifiers) {
        for (const auto& tok : raw) {
            std::string piece;
            for (size_t i = 0; i < tok.size(); ++i) {
                unsigned char u = static_cast<unsigned char>(tok[i]);
                if (tok[i] == '_') {
                    if (!piece.empty()) { pieces.push_back(piece); piece.clear(); }
                    continue;
                }
                if (!piece.empty() && std::isupper(u) &&
                    std::islower(static_cast<unsigned char>(piece.back()))) {
                    pieces.push_back(piece);
                    piece.clear();
                }
                piece.push_back(tok[i]);
            }
            if (!piece.empty()) pieces.push_back(piece);
        }
    } else {
        pieces = std::move(raw);
    }

    std::vector<std::string> out;
    for (auto& tok : pieces) {
        if (static_cast<int>(tok.size()) < config.min_token_length) continue;
        for (char& c : tok)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out.push_back(std::move(tok));
    }
    return out;
}

inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const PipelineConfig& config) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!config.stopwords.count(t)) out.push_back(t);
    return out;
}

inline std::string stem(const std::string& token) { return porter_stem(token); }

// The one pipeline used for both documents and queries.
inline std::vector<std::string> preprocess(const std::string& text,
                                           const PipelineConfig& config) {
    std::vector<std::string> terms = remove_stopwords(tokenize(text, config), config);
    for (auto& t : terms) t = porter_stem(t);
    return terms;
}

}  // namespace acir
