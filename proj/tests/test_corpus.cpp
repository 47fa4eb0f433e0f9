#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "ctaclust/corpus.hpp"
#include "test_util.hpp"

using namespace ctaclust;
using testutil::TempDir;
using testutil::error_code_of;
using testutil::write_file;

TEST(Corpus, WithoutManifestOrdersFilesLexicographically) {
    TempDir dir;
    write_file(dir / "b.txt", "beta");
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "notes.md", "ignored");
    auto c = load_corpus(dir.path());
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.doc_ids(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(c.documents[0].text, "alpha");
    EXPECT_FALSE(c.documents[0].actor_label.has_value());
    EXPECT_EQ(c.source_dir, dir.path().string());
}

TEST(Corpus, ManifestOrderWins) {
    TempDir dir;
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "b.txt", "beta");
    write_file(dir / "manifest.csv",
               "doc_id,actor,source,published_date,filename\n"
               "r1,APT28,vendor x,2021-03-04,b.txt\n"
               "r2,,,,a.txt\n");
    auto c = load_corpus(dir.path());
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.documents[0].doc_id, "r1");
    EXPECT_EQ(c.documents[0].text, "beta");
    EXPECT_EQ(c.documents[0].actor_label, "APT28");
    EXPECT_EQ(c.documents[0].source, "vendor x");
    EXPECT_EQ(c.documents[0].published_date, "2021-03-04");
    EXPECT_FALSE(c.documents[1].actor_label.has_value());
    EXPECT_FALSE(c.documents[1].published_date.has_value());
}

TEST(Corpus, ExplicitManifestPath) {
    TempDir dir;
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "list.csv", "doc_id,actor,source,published_date,filename\nx,,,2020,a.txt\n");
    auto c = load_corpus(dir.path(), dir / "list.csv");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.documents[0].doc_id, "x");
}

TEST(Corpus, ManifestNamingAbsentFileIsMissingFile) {
    TempDir dir;
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "manifest.csv", "doc_id,actor,source,published_date,filename\nr1,,,,c.txt\n");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::MissingFile);
}

TEST(Corpus, MissingDirectory) {
    TempDir dir;
    EXPECT_EQ(error_code_of([&] { load_corpus(dir / "nope"); }), ErrorCode::MissingFile);
}

TEST(Corpus, DuplicateIdsRejected) {
    TempDir dir;
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "b.txt", "beta");
    write_file(dir / "manifest.csv", "doc_id,actor,source,published_date,filename\nr,,,,a.txt\nr,,,,b.txt\n");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::DuplicateId);
}

TEST(Corpus, BlankDocumentRejected) {
    TempDir dir;
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "b.txt", " \n\t \r\n");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::EmptyDocument);
}

TEST(Corpus, InvalidUtf8Rejected) {
    TempDir dir;
    write_file(dir / "a.txt", "caf\xc3\xa9 ok");
    write_file(dir / "b.txt", "bad \xff byte");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::NonUtf8);
}

TEST(Corpus, Utf8Validator) {
    EXPECT_TRUE(is_valid_utf8("plain ascii"));
    EXPECT_TRUE(is_valid_utf8("\xc3\xa9\xe2\x82\xac\xf0\x9f\x98\x80"));
    EXPECT_FALSE(is_valid_utf8("\xc3"));             // truncated
    EXPECT_FALSE(is_valid_utf8("\xc0\xaf"));         // overlong
    EXPECT_FALSE(is_valid_utf8("\xed\xa0\x80"));     // surrogate
    EXPECT_FALSE(is_valid_utf8("\xf4\x90\x80\x80")); // above U+10FFFF
}

TEST(Corpus, BadManifestHeaderAndDate) {
    TempDir dir;
    write_file(dir / "a.txt", "alpha");
    write_file(dir / "manifest.csv", "id,file\nr1,a.txt\n");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::BadManifest);
    write_file(dir / "manifest.csv", "doc_id,actor,source,published_date,filename\nr1,,,March 2020,a.txt\n");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::BadManifest);
    write_file(dir / "manifest.csv", "doc_id,actor,source,published_date,filename\nr1,,,2020-13-01,a.txt\n");
    EXPECT_EQ(error_code_of([&] { load_corpus(dir.path()); }), ErrorCode::BadManifest);
}

TEST(Corpus, QuotedManifestFields) {
    TempDir dir;
    write_file(dir / "a b.txt", "alpha");
    write_file(dir / "manifest.csv",
               "doc_id,actor,source,published_date,filename\r\n\"r,1\",\"Lazarus \"\"Group\"\"\",,,a b.txt\r\n");
    auto c = load_corpus(dir.path());
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.documents[0].doc_id, "r,1");
    EXPECT_EQ(c.documents[0].actor_label, "Lazarus \"Group\"");
}

TEST(Corpus, RepeatedLoadsAreIdentical) {
    auto a = load_corpus(CTACLUST_SAMPLE_CORPUS);
    auto b = load_corpus(CTACLUST_SAMPLE_CORPUS);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.documents[i].doc_id, b.documents[i].doc_id);
        EXPECT_EQ(a.documents[i].text, b.documents[i].text);
        EXPECT_EQ(a.documents[i].actor_label, b.documents[i].actor_label);
    }
}

TEST(Corpus, ManifestRoundTrip) {
    auto original = load_corpus(CTACLUST_SAMPLE_CORPUS);
    TempDir dir;
    std::ostringstream listing;
    write_manifest(original, listing);
    auto reloaded = load_corpus(CTACLUST_SAMPLE_CORPUS, [&] {
        auto p = dir / "roundtrip.csv";
        write_file(p, listing.str());
        return p;
    }());
    EXPECT_EQ(reloaded.doc_ids(), original.doc_ids());
    for (std::size_t i = 0; i < original.size(); ++i) {
        EXPECT_EQ(reloaded.documents[i].actor_label, original.documents[i].actor_label);
        EXPECT_EQ(reloaded.documents[i].published_date, original.documents[i].published_date);
    }
}

TEST(Corpus, SampleCorpusShape) {
    auto c = load_corpus(CTACLUST_SAMPLE_CORPUS);
    ASSERT_EQ(c.size(), 12u);
    std::map<std::string, int> per_actor;
    for (const auto& d : c.documents) {
        ASSERT_TRUE(d.actor_label.has_value());
        ++per_actor[*d.actor_label];
        EXPECT_NE(d.text.find("SYNTHETIC"), std::string::npos);
    }
    EXPECT_EQ(per_actor.size(), 3u);
    for (const auto& [actor, n] : per_actor) EXPECT_EQ(n, 4) << actor;
}
