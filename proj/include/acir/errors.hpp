#pragma once
// Domain error types shared across the library.

#include <stdexcept>
#include <string>

namespace acir {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotARepository : Error {
    explicit NotARepository(const std::string& path)
        : Error("not a git repository: " + path) {}
};

struct UnknownRevision : Error {
    explicit UnknownRevision(const std::string& rev)
        : Error("unknown revision: " + rev) {}
};

struct RepositoryReadError : Error {
    using Error::Error;
};

struct FileAbsentAtRevision : Error {
    explicit FileAbsentAtRevision(const std::string& path)
        : Error("file absent at pinned revision: " + path) {}
};

struct InvalidRange : Error {
    using Error::Error;
};

struct ParseFailure : Error {
    using Error::Error;
};

struct EmptyCorpus : Error {
    EmptyCorpus() : Error("corpus contains no documents") {}
};

struct IoError : Error {
    using Error::Error;
};

struct FormatVersionMismatch : Error {
    using Error::Error;
};

struct CorruptIndex : Error {
    using Error::Error;
};

struct EmptyResultSet : Error {
    EmptyResultSet() : Error("empty result set") {}
};

struct EmptyCaseSet : Error {
    EmptyCaseSet() : Error("no evaluation cases given") {}
};

}  // namespace acir
