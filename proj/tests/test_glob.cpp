#include <doctest.h>

#include "acir/glob.hpp"

using acir::glob_match;

TEST_CASE("single star stays within one segment") {
    CHECK(glob_match("*.java", "Foo.java"));
    CHECK_FALSE(glob_match("*.java", "src/Foo.java"));
    CHECK(glob_match("src/*.java", "src/Foo.java"));
    CHECK_FALSE(glob_match("src/*.java", "src/util/Foo.java"));
}

TEST_CASE("double star crosses segments") {
    CHECK(glob_match("**/*.java", "Foo.java"));
    CHECK(glob_match("**/*.java", "src/Foo.java"));
    CHECK(glob_match("**/*.java", "a/b/c/Foo.java"));
    CHECK_FALSE(glob_match("**/*.java", "Foo.txt"));
    CHECK(glob_match("src/**", "src/a/b"));
}

TEST_CASE("question mark matches one non-slash character") {
    CHECK(glob_match("?.java", "A.java"));
    CHECK_FALSE(glob_match("?.java", "AB.java"));
    CHECK_FALSE(glob_match("a?c", "a/c"));
}

TEST_CASE("matches_any over a filter list") {
    std::vector<std::string> filters = {"**/*.java", "*.md"};
    CHECK(acir::matches_any(filters, "x/y/Z.java"));
    CHECK(acir::matches_any(filters, "README.md"));
    CHECK_FALSE(acir::matches_any(filters, "notes/README.md"));
}
