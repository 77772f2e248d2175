#pragma once
// Path glob matching supporting *, ** and ? over '/'-separated paths.

#include <string>
#include <string_view>
#include <vector>

namespace acir {

namespace detail {

// `*` and `?` never cross a '/'; `**` matches any number of path segments.
inline bool glob_match_impl(std::string_view pat, std::string_view text) {
    if (pat.empty()) return text.empty();

    if (pat.size() >= 2 && pat[0] == '*' && pat[1] == '*') {
        std::string_view rest = pat.substr(2);
        if (!rest.empty() && rest[0] == '/') {
            // "**/" matches zero or more whole segments.
            std::string_view tail = rest.substr(1);
            for (size_t i = 0;; ++i) {
                if (glob_match_impl(tail, text.substr(i))) return true;
                while (i < text.size() && text[i] != '/') ++i;
                if (i >= text.size()) return false;
                // skip the '/' in the next iteration step
            }
        }
        for (size_t i = 0; i <= text.size(); ++i)
            if (glob_match_impl(rest, text.substr(i))) return true;
        return false;
    }

    char p = pat[0];
    if (p == '*') {
        for (size_t i = 0; i <= text.size(); ++i) {
            if (glob_match_impl(pat.substr(1), text.substr(i))) return true;
            if (i < text.size() && text[i] == '/') return false;
        }
        return false;
    }
    if (text.empty()) return false;
    if (p == '?') return text[0] != '/' && glob_match_impl(pat.substr(1), text.substr(1));
    return p == text[0] && glob_match_impl(pat.substr(1), text.substr(1));
}

}  // namespace detail

inline bool glob_match(std::string_view pattern, std::string_view path) {
    // A bare "**/x" pattern also matches "x" at the repository root.
    return detail::glob_match_impl(pattern, path);
}

inline bool matches_any(const std::vector<std::string>& patterns, std::string_view path) {
    for (const auto& p : patterns)
        if (glob_match(p, path)) return true;
    return false;
}

}  // namespace acir
