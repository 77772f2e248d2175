#pragma once
// Read-only git repository access: changeset enumeration, blame,
// line-range history and ancestry queries, pinned at one revision.
//
// Realized by invoking the git command-line tools and parsing their
// porcelain output. All operations are read-only and deterministic
// for a fixed repository state.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acir/errors.hpp"
#include "acir/process.hpp"

namespace acir {

using ChangesetId = std::string;

struct Changeset {
    ChangesetId id;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::string author;
    std::string description;  // full commit message, may be empty

    bool operator==(const Changeset&) const = default;
};

namespace detail {

inline bool is_hex_id(std::string_view s) {
    if (s.size() != 40) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

}  // namespace detail

class Repository {
public:
    // Opens `path` read-only, pinned at `revision`.
    static Repository open(const std::string& path, const std::string& revision) {
        auto probe = run_command({"git", "-C", path, "rev-parse", "--git-dir"});
        if (probe.exit_code != 0)
            throw NotARepository(path);
        auto resolve = run_command(
            {"git", "-C", path, "rev-parse", "--verify", "--quiet", revision + "^{commit}"});
        if (resolve.exit_code != 0)
            throw UnknownRevision(revision);
        std::string full = resolve.output;
        while (!full.empty() && (full.back() == '\n' || full.back() == '\r'))
            full.pop_back();
        return Repository(path, full);
    }

    const std::string& root_path() const { return root_; }
    const ChangesetId& pinned_revision() const { return rev_; }

    // All commits reachable from the pinned revision, each id once,
    // newest-first in topological order with timestamp tie-break.
    std::vector<Changeset> list_changesets() const {
        struct Node {
            Changeset cs;
            std::vector<ChangesetId> parents;
        };
        auto res = git({"log", "--format=%H%x1f%P%x1f%ct%x1f%an%x1f%B%x1e", rev_});
        if (res.exit_code != 0)
            throw RepositoryReadError("git log failed for " + rev_);

        std::map<ChangesetId, Node> nodes;
        std::string record;
        std::istringstream stream(res.output);
        while (std::getline(stream, record, '\x1e')) {
            // A record may start with the newline terminating the previous one.
            size_t begin = record.find_first_not_of('\n');
            if (begin == std::string::npos) continue;
            record = record.substr(begin);
            std::vector<std::string> fields;
            size_t pos = 0;
            for (int i = 0; i < 4; ++i) {
                size_t sep = record.find('\x1f', pos);
                fields.push_back(record.substr(pos, sep - pos));
                pos = sep + 1;
            }
            fields.push_back(record.substr(pos));
            Node n;
            n.cs.id = fields[0];
            n.cs.timestamp = std::stoll(fields[2]);
            n.cs.author = fields[3];
            n.cs.description = fields[4];
            while (!n.cs.description.empty() && n.cs.description.back() == '\n')
                n.cs.description.pop_back();
            std::istringstream ps(fields[1]);
            std::string p;
            while (ps >> p) n.parents.push_back(p);
            nodes.emplace(n.cs.id, std::move(n));
        }

        // Kahn's algorithm from the pinned head, emitting the newest
        // available commit first (tie-break: id) so the order is total
        // and reproducible.
        std::map<ChangesetId, int> pending_children;
        for (const auto& [id, n] : nodes)
            for (const auto& p : n.parents)
                if (nodes.count(p)) ++pending_children[p];

        auto later = [&](const ChangesetId& a, const ChangesetId& b) {
            const auto& ca = nodes.at(a).cs;
            const auto& cb = nodes.at(b).cs;
            if (ca.timestamp != cb.timestamp) return ca.timestamp > cb.timestamp;
            return ca.id < cb.id;
        };

        std::vector<ChangesetId> ready;
        for (const auto& [id, n] : nodes)
            if (pending_children.find(id) == pending_children.end()) ready.push_back(id);

        std::vector<Changeset> out;
        out.reserve(nodes.size());
        while (!ready.empty()) {
            auto it = std::min_element(ready.begin(), ready.end(),
                                       [&](const auto& a, const auto& b) { return later(a, b); });
            ChangesetId id = *it;
            ready.erase(it);
            out.push_back(nodes.at(id).cs);
            for (const auto& p : nodes.at(id).parents) {
                auto pit = pending_children.find(p);
                if (pit != pending_children.end() && --pit->second == 0) {
                    pending_children.erase(pit);
                    ready.push_back(p);
                }
            }
        }
        return out;
    }

    // Per-line attribution: element k is the changeset that last
    // modified line k+1 of the file at the pinned revision.
    std::vector<ChangesetId> blame_lines(const std::string& file_path) const {
        require_file(file_path);
        auto res = git({"blame", "--line-porcelain", rev_, "--", file_path});
        if (res.exit_code != 0)
            throw RepositoryReadError("git blame failed for " + file_path);
        std::vector<ChangesetId> out;
        for (const auto& line : detail::split_lines(res.output)) {
            if (line.size() >= 40 && detail::is_hex_id(std::string_view(line).substr(0, 40))) {
                // Header line: "<sha> <orig-line> <final-line> [count]".
                if (line.size() > 40 && line[40] == ' ')
                    out.push_back(line.substr(0, 40));
            }
        }
        return out;
    }

    // All changesets that ever modified lines [start_line, end_line],
    // following the range backward through history (git log -L).
    std::set<ChangesetId> line_range_history(const std::string& file_path,
                                             int start_line, int end_line) const {
        if (start_line < 1 || start_line > end_line)
            throw InvalidRange("invalid line range " + std::to_string(start_line) + "," +
                               std::to_string(end_line) + " for " + file_path);
        require_file(file_path);
        auto res = git({"log", "--format=%H",
                        "-L" + std::to_string(start_line) + "," + std::to_string(end_line) +
                            ":" + file_path,
                        rev_});
        if (res.exit_code != 0)
            throw RepositoryReadError("git log -L failed for " + file_path);
        std::set<ChangesetId> out;
        for (const auto& line : detail::split_lines(res.output))
            if (detail::is_hex_id(line)) out.insert(line);
        return out;
    }

    // Proper ancestors of `threshold` (threshold excluded).
    std::set<ChangesetId> strict_ancestors(const std::string& threshold) const {
        auto resolve = git({"rev-parse", "--verify", "--quiet", threshold + "^{commit}"});
        if (resolve.exit_code != 0)
            throw UnknownRevision(threshold);
        std::string full = resolve.output;
        while (!full.empty() && full.back() == '\n') full.pop_back();
        auto res = git({"rev-list", full});
        if (res.exit_code != 0)
            throw RepositoryReadError("git rev-list failed for " + threshold);
        std::set<ChangesetId> out;
        for (const auto& line : detail::split_lines(res.output))
            if (detail::is_hex_id(line)) out.insert(line);
        out.erase(full);
        return out;
    }

    // Files present in the pinned revision's tree.
    std::vector<std::string> list_files() const {
        auto res = git({"ls-tree", "-r", "--name-only", "-z", rev_});
        if (res.exit_code != 0)
            throw RepositoryReadError("git ls-tree failed");
        std::vector<std::string> out;
        std::string cur;
        for (char c : res.output) {
            if (c == '\0') {
                out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        return out;
    }

    // Content of `file_path` at the pinned revision.
    std::string read_file(const std::string& file_path) const {
        auto res = git({"show", rev_ + ":" + file_path});
        if (res.exit_code != 0)
            throw FileAbsentAtRevision(file_path);
        return res.output;
    }

    // Post-image (path, line) pairs touched by `changeset`, from a
    // zero-context diff against its first parent. Pure deletions are
    // reported at the surviving line position.
    std::vector<std::pair<std::string, int>> changed_lines(const ChangesetId& changeset) const {
        auto res = git({"show", "--format=", "--unified=0", changeset});
        if (res.exit_code != 0)
            throw UnknownRevision(changeset);
        std::vector<std::pair<std::string, int>> out;
        std::string current_file;
        for (const auto& line : detail::split_lines(res.output)) {
            if (line.rfind("+++ b/", 0) == 0) {
                current_file = line.substr(6);
            } else if (line.rfind("@@ ", 0) == 0 && !current_file.empty()) {
                size_t plus = line.find('+');
                if (plus == std::string::npos) continue;
                int start = 0, count = 1;
                size_t p = plus + 1;
                while (p < line.size() && isdigit(static_cast<unsigned char>(line[p])))
                    start = start * 10 + (line[p++] - '0');
                if (p < line.size() && line[p] == ',') {
                    ++p;
                    count = 0;
                    while (p < line.size() && isdigit(static_cast<unsigned char>(line[p])))
                        count = count * 10 + (line[p++] - '0');
                }
                if (count == 0) {
                    out.emplace_back(current_file, std::max(start, 1));
                } else {
                    for (int k = 0; k < count; ++k)
                        out.emplace_back(current_file, start + k);
                }
            }
        }
        return out;
    }

    // Full changeset records for the given ids, newest first per
    // list_changesets order.
    std::vector<Changeset> changesets_by_id(const std::set<ChangesetId>& ids) const {
        std::vector<Changeset> out;
        for (const auto& cs : list_changesets())
            if (ids.count(cs.id)) out.push_back(cs);
        return out;
    }

private:
    Repository(std::string root, std::string rev)
        : root_(std::move(root)), rev_(std::move(rev)) {}

    CommandResult git(std::vector<std::string> args) const {
        std::vector<std::string> argv = {"git", "-C", root_};
        argv.insert(argv.end(), args.begin(), args.end());
        return run_command(argv);
    }

    void require_file(const std::string& file_path) const {
        auto res = git({"cat-file", "-e", rev_ + ":" + file_path});
        if (res.exit_code != 0)
            throw FileAbsentAtRevision(file_path);
    }

    std::string root_;
    ChangesetId rev_;
};

}  // namespace acir
