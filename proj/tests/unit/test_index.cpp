#include <doctest.h>

#include <fstream>
#include <map>

#include "expedition/error.hpp"
#include "expedition/index.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace expedition;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    auto dir = fs::temp_directory_path() / "expedition-index-test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
}

}  // namespace

TEST_CASE("TINY6 collection length matches hand tokenization") {
    // Counted by hand over title + body of the six fixture records.
    CHECK(fixtures::tiny6().collection_len() == 173);
    std::size_t regex_count = 0;
    for (const auto& d : fixtures::tiny6().documents()) regex_count += oracle::words(d.text()).size();
    CHECK(regex_count == 173);
}

TEST_CASE("term frequencies count repeats") {
    Document d;
    d.doc_id = "ny";
    d.title = "";
    d.body = "New York, new york!";
    d.published = Date{2000, 1, 1};
    d.article_type = "news";
    auto index = Index::build(Corpus({d}));
    REQUIRE(index.term("new"));
    CHECK(index.term("new")->postings.at(0).tf == 2);
    CHECK(index.term("york")->postings.at(0).tf == 2);
    CHECK(index.doc_len(0) == 4);
    CHECK(index.term("zzzz") == nullptr);
}

TEST_CASE("entity and bucket lookups on TINY6") {
    const auto& index = fixtures::tiny6();
    auto wtc = index.entity_docs("E:WTC");
    REQUIRE(wtc.size() == 2);
    CHECK(index.doc_id(wtc[0]) == "d5");
    CHECK(index.doc_id(wtc[1]) == "d6");
    CHECK(index.entity_docs("E:Nobody").empty());
    CHECK(index.bucket_docs(Month(1994, 2)).size() == 1);
    CHECK(index.span().to_string() == "1990-05..2001-09");
    CHECK(index.find("d3"));
    CHECK_FALSE(index.find("d7"));
    CHECK(index.doc_entities(*index.find("d1")) == std::vector<std::string>{"E:Giuliani", "E:NYPD"});
}

TEST_CASE("postings agree with brute-force counts on random corpora") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 20; ++round) {
        auto docs = fixtures::random_corpus(rng, 1 + fixtures::pick(rng, 20));
        auto index = Index::build(Corpus(docs));
        std::map<std::pair<std::string, DocNum>, std::uint32_t> expected;
        for (DocNum d = 0; d < docs.size(); ++d) {
            for (const auto& w : oracle::words(index.document(d).text())) ++expected[{w, d}];
        }
        std::size_t seen = 0;
        for (const auto& t : index.terms()) {
            for (const auto& p : index.term(t)->postings) {
                CHECK(expected[{t, p.doc}] == p.tf);
                ++seen;
            }
        }
        CHECK(seen == expected.size());
    }
}

TEST_CASE("build is a pure function of the corpus") {
    auto path = temp_file("a.bin");
    auto path2 = temp_file("b.bin");
    Index::build(ingest(fixtures::tiny6_path()).corpus).save(path);
    Index::build(ingest(fixtures::tiny6_path()).corpus).save(path2);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("empty corpus cannot be indexed") { CHECK_THROWS_AS(Index::build(Corpus{}), InvalidArgument); }

TEST_CASE("save then load keeps every lookup") {
    const auto& a = fixtures::tiny6();
    auto path = temp_file("tiny6.bin");
    a.save(path);
    auto b = Index::load(path);
    CHECK(b.size() == a.size());
    CHECK(b.collection_len() == a.collection_len());
    CHECK(b.terms() == a.terms());
    for (const auto& t : a.terms()) {
        CHECK(b.term(t)->postings == a.term(t)->postings);
        CHECK(b.collection_tf(t) == a.collection_tf(t));
    }
    for (DocNum d = 0; d < a.size(); ++d) {
        CHECK(b.document(d) == a.document(d));
        CHECK(b.doc_len(d) == a.doc_len(d));
        CHECK(b.doc_salience(d) == a.doc_salience(d));
    }
    CHECK(b.entity_map() == a.entity_map());
    CHECK(b.bucket_map() == a.bucket_map());
    CHECK(b.span() == a.span());
}

TEST_CASE("damaged index files are rejected") {
    auto path = temp_file("orig.bin");
    fixtures::tiny6().save(path);
    const auto bytes = slurp(path);
    auto bad = temp_file("bad.bin");

    SUBCASE("truncated") {
        spit(bad, bytes.substr(0, bytes.size() / 2));
        CHECK_THROWS_AS(Index::load(bad), DataError);
        spit(bad, bytes.substr(0, 5));
        CHECK_THROWS_AS(Index::load(bad), DataError);
    }
    SUBCASE("bumped version byte") {
        auto copy = bytes;
        copy[8] = static_cast<char>(copy[8] + 1);
        spit(bad, copy);
        CHECK_THROWS_AS(Index::load(bad), VersionError);
    }
    SUBCASE("flipped payload byte") {
        auto copy = bytes;
        copy[copy.size() - 10] ^= 0x40;
        spit(bad, copy);
        CHECK_THROWS_AS(Index::load(bad), DataError);
    }
    SUBCASE("wrong magic") {
        auto copy = bytes;
        copy[0] = 'X';
        spit(bad, copy);
        CHECK_THROWS_AS(Index::load(bad), DataError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(Index::load(temp_file("nope.bin")), DataError); }
}
