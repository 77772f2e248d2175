#pragma once
// Lightweight Java method/constructor extraction: comment- and
// string-aware tokenizing plus brace matching over signatures.
// Not a grammar parser; spans are signature line through matching
// closing brace.

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "acir/errors.hpp"

namespace acir {

struct MethodSpan {
    std::string name;
    int parameter_count = 0;
    int start_line = 0;  // 1-based, line of the method name in the signature
    int end_line = 0;    // 1-based, line of the matching closing brace

    bool operator==(const MethodSpan&) const = default;
};

namespace detail {

struct JavaToken {
    std::string text;
    int line = 0;
    bool is_word = false;
};

// Strips comments, string/char literals and text blocks; returns the
// remaining code as word and punctuation tokens with line numbers.
inline std::vector<JavaToken> lex_java(const std::string& src) {
    std::vector<JavaToken> tokens;
    int line = 1;
    size_t i = 0;
    const size_t n = src.size();

    auto at = [&](size_t k) { return k < n ? src[k] : '\0'; };

    while (i < n) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (c == '/' && at(i + 1) == '/') {
            while (i < n && src[i] != '\n') ++i;
        } else if (c == '/' && at(i + 1) == '*') {
            i += 2;
            while (i < n && !(src[i] == '*' && at(i + 1) == '/')) {
                if (src[i] == '\n') ++line;
                ++i;
            }
            if (i >= n) throw ParseFailure("unterminated block comment");
            i += 2;
        } else if (c == '"' && at(i + 1) == '"' && at(i + 2) == '"') {
            i += 3;  // text block
            while (i < n && !(src[i] == '"' && at(i + 1) == '"' && at(i + 2) == '"')) {
                if (src[i] == '\n') ++line;
                if (src[i] == '\\') ++i;
                ++i;
            }
            if (i >= n) throw ParseFailure("unterminated text block");
            i += 3;
        } else if (c == '"' || c == '\'') {
            char quote = c;
            ++i;
            while (i < n && src[i] != quote) {
                if (src[i] == '\n') throw ParseFailure("unterminated literal");
                if (src[i] == '\\') ++i;
                ++i;
            }
            if (i >= n) throw ParseFailure("unterminated literal");
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
            size_t start = i;
            while (i < n && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                             src[i] == '_' || src[i] == '$'))
                ++i;
            tokens.push_back({src.substr(start, i - start), line, true});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < n && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '.' ||
                             src[i] == '_'))
                ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else {
            tokens.push_back({std::string(1, c), line, false});
            ++i;
        }
    }
    return tokens;
}

inline const std::set<std::string>& java_control_words() {
    static const std::set<std::string> kw = {
        "if", "else", "for", "while", "do", "switch", "catch", "try",
        "return", "new", "synchronized", "assert", "throw", "super", "this"};
    return kw;
}

}  // namespace detail

// One entry per method or constructor body, including those of nested
// and anonymous classes. Bodiless declarations (abstract, interface)
// are excluded.
inline std::vector<MethodSpan> extract_methods(const std::string& file_text) {
    const auto tokens = detail::lex_java(file_text);
    std::vector<MethodSpan> methods;
    const size_t n = tokens.size();

    auto tok = [&](size_t k) -> const detail::JavaToken& { return tokens[k]; };

    for (size_t i = 0; i + 1 < n; ++i) {
        if (!tok(i).is_word || tok(i + 1).text != "(") continue;
        if (detail::java_control_words().count(tok(i).text)) continue;
        if (i > 0) {
            const std::string& prev = tok(i - 1).text;
            if (prev == "." || prev == "new" || prev == "@") continue;
        }

        // Matching ')' with top-level parameter comma count. Commas
        // inside generics, nested parens or brackets do not count.
        size_t j = i + 1;
        int paren_depth = 0, angle_depth = 0, bracket_depth = 0;
        int commas = 0;
        bool any_param_token = false;
        for (; j < n; ++j) {
            const std::string& t = tok(j).text;
            if (t == "(") ++paren_depth;
            else if (t == ")") {
                if (--paren_depth == 0) break;
            } else if (paren_depth >= 1) {
                if (t == "<") ++angle_depth;
                else if (t == ">") angle_depth = std::max(0, angle_depth - 1);
                else if (t == "[") ++bracket_depth;
                else if (t == "]") --bracket_depth;
                else if (t == "," && paren_depth == 1 && angle_depth == 0 && bracket_depth == 0)
                    ++commas;
                if (paren_depth == 1 && t != ",") any_param_token = true;
            }
        }
        if (j >= n) continue;

        // After the parameter list: an optional throws clause, then '{'.
        size_t k = j + 1;
        if (k < n && tok(k).text == "throws") {
            ++k;
            while (k < n && (tok(k).is_word || tok(k).text == "." || tok(k).text == ","))
                ++k;
        }
        if (k >= n || tok(k).text != "{") continue;

        size_t body_open = k;
        int depth = 0;
        size_t m = body_open;
        for (; m < n; ++m) {
            if (tok(m).text == "{") ++depth;
            else if (tok(m).text == "}" && --depth == 0) break;
        }
        if (m >= n)
            throw ParseFailure("unbalanced braces after method " + tok(i).text);

        MethodSpan span;
        span.name = tok(i).text;
        span.parameter_count = any_param_token ? commas + 1 : 0;
        span.start_line = tok(i).line;
        span.end_line = tok(m).line;
        methods.push_back(span);
    }
    return methods;
}

}  // namespace acir
