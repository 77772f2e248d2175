#include <doctest.h>

#include "acir/corpus.hpp"
#include "fixture_repo.hpp"

using namespace acir;
using acir::testing::FixtureRepo;

namespace {

struct AnnotatedFixture {
    FixtureRepo fx{"corpus"};
    std::string c0, c1, c2;

    AnnotatedFixture() {
        // f.txt: three lines; line 2 goes through an intermediate
        // content before its final form.
        fx.set_file("f.txt", {"alpha", "beta0", "gamma0"});
        c0 = fx.commit("seed content");
        fx.set_file("f.txt", {"alpha", "beta0", "gamma1"});
        c1 = fx.commit("first rework");
        fx.set_file("f.txt", {"alpha", "beta1", "gamma2"});
        c2 = fx.commit("second rework");
    }
};

Artifact whole_file_artifact(const std::string& path, int lines) {
    Artifact a;
    a.id = path;
    a.granularity = Granularity::File;
    a.path = path;
    a.name = path;
    a.start_line = 1;
    a.end_line = lines;
    return a;
}

}  // namespace

TEST_CASE("annotate_artifact deduplicates recent changesets") {
    AnnotatedFixture f;
    auto repo = Repository::open(f.fx.path(), "HEAD");
    Artifact a = whole_file_artifact("f.txt", 3);

    CorpusConfig cfg;
    cfg.range_mode = RangeMode::Recent;
    cfg.revision = repo.pinned_revision();
    // blame is [c0, c2, c2] -> deduplicated set {c0, c2}
    CHECK(annotate_artifact(a, cfg, repo, {a}) == std::set<ChangesetId>{f.c0, f.c2});
}

TEST_CASE("annotate_artifact ALL includes historical changesets") {
    AnnotatedFixture f;
    auto repo = Repository::open(f.fx.path(), "HEAD");
    Artifact a = whole_file_artifact("f.txt", 3);

    CorpusConfig cfg;
    cfg.range_mode = RangeMode::All;
    cfg.revision = repo.pinned_revision();
    CHECK(annotate_artifact(a, cfg, repo, {a}) ==
          std::set<ChangesetId>{f.c0, f.c1, f.c2});
}

TEST_CASE("annotate_artifact intersects with strict ancestors of the threshold") {
    AnnotatedFixture f;
    auto repo = Repository::open(f.fx.path(), "HEAD");
    Artifact a = whole_file_artifact("f.txt", 3);

    CorpusConfig cfg;
    cfg.range_mode = RangeMode::All;
    cfg.revision = repo.pinned_revision();
    cfg.threshold = f.c2;  // strict ancestors = {c0, c1}
    CHECK(annotate_artifact(a, cfg, repo, {a}) == std::set<ChangesetId>{f.c0, f.c1});

    cfg.threshold = f.c0;  // root: no ancestors
    CHECK(annotate_artifact(a, cfg, repo, {a}).empty());
}

TEST_CASE("recent annotation is a subset of all annotation") {
    AnnotatedFixture f;
    auto repo = Repository::open(f.fx.path(), "HEAD");
    Artifact a = whole_file_artifact("f.txt", 3);

    CorpusConfig recent, all;
    recent.range_mode = RangeMode::Recent;
    all.range_mode = RangeMode::All;
    auto r = annotate_artifact(a, recent, repo, {a});
    auto al = annotate_artifact(a, all, repo, {a});
    for (const auto& id : r) CHECK(al.count(id));
}

TEST_CASE("build_corpus produces one document per java file") {
    FixtureRepo fx("corpusbuild");
    fx.set_file("A.java", {"class A {", "  void f() {", "    go();", "  }", "}"});
    std::string c1 = fx.commit("feature alpha work");
    fx.set_file("B.java", {"class B {", "  void g() {", "    stop();", "  }", "}"});
    std::string c2 = fx.commit("feature beta work");

    auto repo = Repository::open(fx.path(), "HEAD");
    CorpusConfig cfg;
    cfg.granularity = Granularity::File;
    cfg.range_mode = RangeMode::Recent;
    cfg.revision = repo.pinned_revision();

    Corpus corpus = build_corpus(cfg, repo);
    REQUIRE(corpus.documents.size() == 2);
    CHECK(corpus.documents[0].artifact.id == "A.java");
    CHECK(corpus.documents[0].changeset_ids == std::set<ChangesetId>{c1});
    CHECK(corpus.documents[0].raw_text == "feature alpha work");
    CHECK(corpus.documents[1].artifact.id == "B.java");
    CHECK(corpus.documents[1].changeset_ids == std::set<ChangesetId>{c2});
    CHECK(corpus.skipped.empty_documents == 0);
}

TEST_CASE("raw_text concatenates descriptions newest-first") {
    FixtureRepo fx("corpustext");
    fx.set_file("A.java", {"class A {", "  void f() { one(); }", "}"});
    fx.commit("older message");
    fx.set_file("A.java", {"class A {", "  void f() { two(); }", "}"});
    fx.commit("newer message");

    auto repo = Repository::open(fx.path(), "HEAD");
    CorpusConfig cfg;
    cfg.granularity = Granularity::File;
    cfg.range_mode = RangeMode::All;
    cfg.revision = repo.pinned_revision();

    Corpus corpus = build_corpus(cfg, repo);
    REQUIRE(corpus.documents.size() == 1);
    CHECK(corpus.documents[0].raw_text == "newer message\nolder message");
}

TEST_CASE("threshold at the root commit empties the corpus") {
    FixtureRepo fx("corpusroot");
    fx.set_file("A.java", {"class A {", "  void f() { x(); }", "}"});
    std::string root = fx.commit("only commit");

    auto repo = Repository::open(fx.path(), "HEAD");
    CorpusConfig cfg;
    cfg.granularity = Granularity::File;
    cfg.range_mode = RangeMode::Recent;
    cfg.revision = repo.pinned_revision();
    cfg.threshold = root;

    Corpus corpus = build_corpus(cfg, repo);
    CHECK(corpus.documents.empty());
    CHECK(corpus.skipped.empty_documents == 1);
    CHECK_THROWS_AS(corpus_stats(corpus), EmptyCorpus);
}

TEST_CASE("file without methods contributes no documents at method granularity") {
    FixtureRepo fx("corpusnomethods");
    fx.set_file("F.java", {"class F {", "  int a;", "}"});
    fx.commit("fields");

    auto repo = Repository::open(fx.path(), "HEAD");
    CorpusConfig cfg;
    cfg.granularity = Granularity::Method;
    cfg.revision = repo.pinned_revision();
    CHECK(build_corpus(cfg, repo).documents.empty());
}

TEST_CASE("corpus_stats averages distinct changesets per artifact") {
    Corpus corpus;
    Document d1, d2;
    d1.artifact = whole_file_artifact("a.java", 10);
    d1.changeset_ids = {"c1"};
    d2.artifact = whole_file_artifact("b.java", 5);
    d2.changeset_ids = {"c1", "c2"};
    corpus.documents = {d1, d2};

    CorpusStats stats = corpus_stats(corpus);
    CHECK(stats.avg_distinct_changesets_per_artifact == doctest::Approx(1.50));
    CHECK(stats.file_count == 2);
    CHECK(stats.method_count == 0);
    CHECK(stats.total_loc == 15);
}

TEST_CASE("build_corpus is reproducible") {
    AnnotatedFixture f;
    auto repo = Repository::open(f.fx.path(), "HEAD");
    CorpusConfig cfg;
    cfg.granularity = Granularity::File;
    cfg.range_mode = RangeMode::All;
    cfg.revision = repo.pinned_revision();
    cfg.file_filter = {"**/*.txt"};

    Corpus one = build_corpus(cfg, repo);
    Corpus two = build_corpus(cfg, repo);
    REQUIRE(one.documents.size() == two.documents.size());
    for (size_t i = 0; i < one.documents.size(); ++i) {
        CHECK(one.documents[i].artifact == two.documents[i].artifact);
        CHECK(one.documents[i].changeset_ids == two.documents[i].changeset_ids);
        CHECK(one.documents[i].raw_text == two.documents[i].raw_text);
    }
}
