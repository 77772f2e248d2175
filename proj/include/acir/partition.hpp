#pragma once
// Partition a pinned source snapshot into file- or method-granularity
// artifacts with 1-based inclusive line spans.

#include <algorithm>
#include <string>
#include <vector>

#include "acir/errors.hpp"
#include "acir/glob.hpp"
#include "acir/java_methods.hpp"
#include "acir/vcs.hpp"

namespace acir {

enum class Granularity { File, Method };

inline const char* to_string(Granularity g) {
    return g == Granularity::File ? "file" : "method";
}

struct Artifact {
    std::string id;
    Granularity granularity = Granularity::File;
    std::string path;  // repo-relative
    std::string name;  // file name, or "method/arity"
    int start_line = 0;
    int end_line = 0;

    bool operator==(const Artifact&) const = default;
};

struct PartitionResult {
    std::vector<Artifact> artifacts;
    std::vector<std::string> unparseable_files;
};

namespace detail {

inline int count_lines(const std::string& text) {
    if (text.empty()) return 0;
    int lines = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') ++lines;
    return lines;
}

inline std::string file_name_of(const std::string& path) {
    size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace detail

// FILE: one artifact per matching file, span = whole file.
// METHOD: one artifact per extracted method/constructor.
// Unparseable files are skipped and reported, not fatal.
inline PartitionResult partition(const Repository& repo, Granularity granularity,
                                 const std::vector<std::string>& file_filter) {
    PartitionResult result;
    std::vector<std::string> files;
    for (const auto& f : repo.list_files())
        if (matches_any(file_filter, f)) files.push_back(f);
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
        std::string text = repo.read_file(path);
        int line_count = detail::count_lines(text);
        if (line_count == 0) continue;

        if (granularity == Granularity::File) {
            Artifact a;
            a.id = path;
            a.granularity = Granularity::File;
            a.path = path;
            a.name = detail::file_name_of(path);
            a.start_line = 1;
            a.end_line = line_count;
            result.artifacts.push_back(std::move(a));
            continue;
        }

        std::vector<MethodSpan> methods;
        try {
            methods = extract_methods(text);
        } catch (const ParseFailure&) {
            result.unparseable_files.push_back(path);
            continue;
        }
        std::sort(methods.begin(), methods.end(), [](const auto& a, const auto& b) {
            return a.start_line != b.start_line ? a.start_line < b.start_line
                                                : a.end_line < b.end_line;
        });
        for (const auto& m : methods) {
            Artifact a;
            a.granularity = Granularity::Method;
            a.path = path;
            a.name = m.name + "/" + std::to_string(m.parameter_count);
            a.start_line = m.start_line;
            a.end_line = m.end_line;
            a.id = path + "::" + m.name + "/" + std::to_string(m.parameter_count) + "@" +
                   std::to_string(m.start_line);
            result.artifacts.push_back(std::move(a));
        }
    }
    return result;
}

// Lines owned by `artifact`: its span minus the spans of same-file
// artifacts strictly nested inside it (innermost method wins).
inline std::vector<int> owned_lines(const Artifact& artifact,
                                    const std::vector<Artifact>& all_artifacts) {
    std::vector<bool> taken(static_cast<size_t>(artifact.end_line - artifact.start_line + 1), false);
    for (const auto& other : all_artifacts) {
        if (other.path != artifact.path || other.id == artifact.id) continue;
        if (other.start_line >= artifact.start_line && other.end_line <= artifact.end_line &&
            (other.start_line > artifact.start_line || other.end_line < artifact.end_line)) {
            for (int k = other.start_line; k <= other.end_line; ++k)
                taken[static_cast<size_t>(k - artifact.start_line)] = true;
        }
    }
    std::vector<int> lines;
    for (int k = artifact.start_line; k <= artifact.end_line; ++k)
        if (!taken[static_cast<size_t>(k - artifact.start_line)]) lines.push_back(k);
    return lines;
}

}  // namespace acir
