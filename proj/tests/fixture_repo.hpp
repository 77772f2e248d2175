#pragma once
// Scripted git fixture repositories with a recorded edit log, plus an
// independent brute-force line-history oracle over that log.
//
// Fixture edits are restricted to operations whose blame and line
// history are unambiguous: whole-file creation, in-place line
// replacement, appending lines, whole-file rename, and deletes. Every
// line content is expected to be unique across the repository history.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "acir/process.hpp"

namespace acir::testing {

using FileLines = std::vector<std::string>;
using FileMap = std::map<std::string, FileLines>;

struct CommitRecord {
    std::string id;
    std::string message;
    std::vector<std::string> parents;      // recorded ids
    FileMap files;                         // full snapshot after the commit
    std::map<std::string, std::string> renamed_from;  // new path -> old path
};

class FixtureRepo {
public:
    explicit FixtureRepo(const std::string& name) {
        root_ = (std::filesystem::temp_directory_path() /
                 ("acir_fixture_" + name + "_" + std::to_string(::getpid())))
                    .string();
        std::filesystem::remove_all(root_);
        std::filesystem::create_directories(root_);
        git({"init", "-q", "-b", "main"});
        git({"config", "user.name", "Fixture"});
        git({"config", "user.email", "fixture@example.com"});
    }

    ~FixtureRepo() { std::filesystem::remove_all(root_); }

    const std::string& path() const { return root_; }
    const std::vector<CommitRecord>& log() const { return log_; }

    void set_file(const std::string& rel_path, FileLines lines) {
        std::filesystem::path p = std::filesystem::path(root_) / rel_path;
        std::filesystem::create_directories(p.parent_path());
        std::ofstream out(p);
        for (const auto& line : lines) out << line << "\n";
        out.close();
        git({"add", rel_path});
        working_[rel_path] = std::move(lines);
    }

    void delete_file(const std::string& rel_path) {
        git({"rm", "-q", rel_path});
        working_.erase(rel_path);
    }

    void rename_file(const std::string& from, const std::string& to) {
        git({"mv", from, to});
        working_[to] = working_.at(from);
        working_.erase(from);
        pending_renames_[to] = from;
    }

    std::string commit(const std::string& message) {
        std::vector<std::string> parents;
        if (!head_.empty()) parents.push_back(head_);
        git({"commit", "-q", "--allow-empty", "-m", message});
        std::string id = rev_parse("HEAD");
        CommitRecord rec;
        rec.id = id;
        rec.message = message;
        rec.parents = parents;
        rec.files = working_;
        rec.renamed_from = pending_renames_;
        pending_renames_.clear();
        log_.push_back(std::move(rec));
        head_ = id;
        return id;
    }

    void branch(const std::string& name) { git({"checkout", "-q", "-b", name}); }

    void checkout(const std::string& ref) {
        git({"checkout", "-q", ref});
        head_ = rev_parse("HEAD");
        working_ = record(head_).files;
    }

    // Conflict-free merge; `expected` is the merged snapshot asserted
    // against git's actual result so the recorded log stays truthful.
    std::string merge(const std::string& branch, const std::string& message,
                      const FileMap& expected) {
        std::string first_parent = rev_parse("HEAD");
        std::string second_parent = rev_parse(branch);
        git({"merge", "-q", "--no-ff", "-m", message, branch});
        std::string id = rev_parse("HEAD");
        for (const auto& [file, lines] : expected) {
            FileLines actual = read_worktree_file(file);
            if (actual != lines)
                throw std::runtime_error("fixture merge mismatch in " + file);
        }
        CommitRecord rec;
        rec.id = id;
        rec.message = message;
        rec.parents = {first_parent, second_parent};
        rec.files = expected;
        log_.push_back(rec);
        head_ = id;
        working_ = expected;
        return id;
    }

    std::string head() const { return head_; }

    const CommitRecord& record(const std::string& id) const {
        for (const auto& rec : log_)
            if (rec.id == id) return rec;
        throw std::runtime_error("no fixture record for " + id);
    }

private:
    void git(std::vector<std::string> args) const {
        std::vector<std::string> argv = {"git", "-C", root_};
        // Deterministic commit objects.
        argv.insert(argv.begin(), {"env", "GIT_AUTHOR_DATE=2024-01-01T00:00:00 +0000",
                                   "GIT_COMMITTER_DATE=2024-01-01T00:00:00 +0000"});
        argv.insert(argv.end(), args.begin(), args.end());
        auto res = run_command(argv);
        if (res.exit_code != 0)
            throw std::runtime_error("fixture git command failed: " + args[0]);
    }

    std::string rev_parse(const std::string& ref) const {
        auto res = run_command({"git", "-C", root_, "rev-parse", ref});
        if (res.exit_code != 0)
            throw std::runtime_error("rev-parse failed for " + ref);
        std::string out = res.output;
        while (!out.empty() && out.back() == '\n') out.pop_back();
        return out;
    }

    FileLines read_worktree_file(const std::string& rel_path) const {
        std::ifstream in(std::filesystem::path(root_) / rel_path);
        FileLines lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        return lines;
    }

    std::string root_;
    std::string head_;
    FileMap working_;
    std::map<std::string, std::string> pending_renames_;
    std::vector<CommitRecord> log_;
};

// ---------------------------------------------------------------------------
// Brute-force oracle over the recorded edit log.

class EditLogOracle {
public:
    EditLogOracle(const std::vector<CommitRecord>& log, const std::string& revision)
        : log_(log) {
        for (const auto& rec : log_) by_id_[rec.id] = &rec;
        collect_ancestors(revision);
    }

    // Commit ids of the proper ancestors of `id`.
    std::set<std::string> strict_ancestors_of(const std::string& id) const {
        std::set<std::string> out;
        std::vector<std::string> stack = {id};
        std::set<std::string> seen = {id};
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            for (const auto& p : by_id_.at(cur)->parents) {
                if (seen.insert(p).second) stack.push_back(p);
                out.insert(p);
            }
        }
        return out;
    }

    // The commit that introduced the content now at line `k` of `path`
    // at the oracle's revision (git blame semantics).
    std::string recent(const std::string& path, int k) const {
        std::string content = line_at(revision_, path, k);
        for (const auto& id : reachable_) {
            std::optional<std::string> here = try_line_at(id, path, k);
            if (!here || *here != content) continue;
            if (introduced_here(id, path, k, content)) return id;
        }
        throw std::runtime_error("oracle: no introducing commit for " + path + ":" +
                                 std::to_string(k));
    }

    // Every ancestor commit that changed line `k` of `path` relative to
    // all of its parents (git log -L semantics for one line).
    std::set<std::string> all_history(const std::string& path, int k) const {
        std::set<std::string> out;
        for (const auto& id : reachable_) {
            std::optional<std::string> here = try_line_at(id, path, k);
            if (!here) continue;
            if (introduced_here(id, path, k, *here)) out.insert(id);
        }
        return out;
    }

    std::set<std::string> recent_set(const std::string& path, const std::vector<int>& lines) const {
        std::set<std::string> out;
        for (int k : lines) out.insert(recent(path, k));
        return out;
    }

    std::set<std::string> all_set(const std::string& path, const std::vector<int>& lines) const {
        std::set<std::string> out;
        for (int k : lines) {
            auto part = all_history(path, k);
            out.insert(part.begin(), part.end());
        }
        return out;
    }

private:
    void collect_ancestors(const std::string& revision) {
        revision_ = revision;
        std::vector<std::string> stack = {revision};
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            if (!reachable_.insert(cur).second) continue;
            for (const auto& p : by_id_.at(cur)->parents) stack.push_back(p);
        }
    }

    // Path of the file known as `path_at_child` in commit `child`, as
    // seen in parent `parent` (follows recorded renames).
    std::string path_in_parent(const std::string& child, const std::string& path_at_child) const {
        const CommitRecord* rec = by_id_.at(child);
        auto it = rec->renamed_from.find(path_at_child);
        return it != rec->renamed_from.end() ? it->second : path_at_child;
    }

    std::optional<std::string> try_line_at(const std::string& id, const std::string& path_at_rev,
                                           int k) const {
        // Map the revision-time path back through renames along any
        // ancestor chain from revision_ to id.
        std::optional<std::string> p = path_at(id, path_at_rev);
        if (!p) return std::nullopt;
        const FileMap& files = by_id_.at(id)->files;
        auto it = files.find(*p);
        if (it == files.end()) return std::nullopt;
        if (k < 1 || k > static_cast<int>(it->second.size())) return std::nullopt;
        return it->second[static_cast<size_t>(k - 1)];
    }

    std::string line_at(const std::string& id, const std::string& path, int k) const {
        auto v = try_line_at(id, path, k);
        if (!v) throw std::runtime_error("oracle: missing line");
        return *v;
    }

    // True when every parent of `id` lacks this content at this line.
    bool introduced_here(const std::string& id, const std::string& path_at_rev, int k,
                         const std::string& content) const {
        const CommitRecord* rec = by_id_.at(id);
        if (rec->parents.empty()) return true;
        for (const auto& parent : rec->parents) {
            std::optional<std::string> there = try_line_at(parent, path_at_rev, k);
            if (there && *there == content) return false;
        }
        return true;
    }

    // The name `path_at_rev` had at commit `id`, walking the rename
    // records backward from revision_; nullopt when the file did not
    // exist yet under any recorded name.
    std::optional<std::string> path_at(const std::string& id, const std::string& path_at_rev) const {
        // Walk from revision_ down to id accumulating renames along the
        // way. Renames apply on the path from the renaming commit back.
        std::string name = path_at_rev;
        std::vector<const CommitRecord*> chain;
        if (!chain_to(revision_, id, chain)) return std::nullopt;
        for (const CommitRecord* rec : chain) {  // newest -> oldest
            if (rec->id == id) break;
            auto it = rec->renamed_from.find(name);
            if (it != rec->renamed_from.end()) name = it->second;
        }
        return name;
    }

    bool chain_to(const std::string& from, const std::string& target,
                  std::vector<const CommitRecord*>& chain) const {
        const CommitRecord* rec = by_id_.at(from);
        chain.push_back(rec);
        if (from == target) return true;
        for (const auto& p : rec->parents)
            if (chain_to(p, target, chain)) return true;
        chain.pop_back();
        return false;
    }

    const std::vector<CommitRecord>& log_;
    std::map<std::string, const CommitRecord*> by_id_;
    std::set<std::string> reachable_;
    std::string revision_;
};

}  // namespace acir::testing
