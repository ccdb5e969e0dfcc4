#include <doctest.h>

#include <map>

#include "expedition/entities.hpp"
#include "expedition/ranking.hpp"
#include "fixtures.hpp"

using namespace expedition;

namespace {

Document doc_with(std::string title, std::string body, std::vector<std::pair<std::string, std::size_t>> mentions) {
    Document d;
    d.doc_id = "x";
    d.title = std::move(title);
    d.body = std::move(body);
    d.published = Date{2000, 1, 1};
    d.article_type = "news";
    for (auto& [id, start] : mentions) d.entity_mentions.push_back({id, "s", start, start + 1, start + 1 <= d.title.size()});
    return d;
}

// Brute-force salience straight from the formula.
std::set<std::string> salient_oracle(const Document& d) {
    std::map<std::string, int> freq;
    std::map<std::string, std::size_t> first;
    std::map<std::string, bool> title;
    for (const auto& m : d.entity_mentions) {
        ++freq[m.entity_id];
        first[m.entity_id] = first.count(m.entity_id) ? std::min(first[m.entity_id], m.char_start) : m.char_start;
        title[m.entity_id] = title[m.entity_id] || m.in_title;
    }
    int mx = 0;
    for (auto& [e, f] : freq) mx = std::max(mx, f);
    std::set<std::string> out;
    for (auto& [e, f] : freq) {
        double s = 2.0 * title[e] + 1.0 * (static_cast<double>(first[e]) < 0.2 * static_cast<double>(d.text_length())) +
                   static_cast<double>(f) / mx;
        if (s >= 1.0) out.insert(e);
    }
    return out;
}

}  // namespace

TEST_CASE("title entity on d1 scores at least 3") {
    const auto& index = fixtures::tiny6();
    const auto& d1 = index.document(*index.find("d1"));
    auto scores = entity_scores(d1);
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].entity_id == "E:Giuliani");
    // title 2 + early 1 + freq 1/2
    CHECK(scores[0].salience_score == doctest::Approx(3.5));
    auto salient = article_salience(d1);
    CHECK(std::find_if(salient.begin(), salient.end(), [](auto& e) { return e.entity_id == "E:Giuliani"; }) !=
          salient.end());
}

TEST_CASE("a late single mention of a minor entity is not salient") {
    std::string body(400, 'w');
    auto d = doc_with("Title", body, {{"E:Main", 10}, {"E:Main", 20}, {"E:Late", 390}});
    auto scores = entity_scores(d);
    auto late = std::find_if(scores.begin(), scores.end(), [](auto& e) { return e.entity_id == "E:Late"; });
    REQUIRE(late != scores.end());
    CHECK(late->salience_score == doctest::Approx(0.5));
    auto salient = article_salience(d);
    REQUIRE(salient.size() == 1);
    CHECK(salient[0].entity_id == "E:Main");
}

TEST_CASE("sole entity mentioned once is salient") {
    std::string body(400, 'w');
    auto d = doc_with("Title", body, {{"E:Only", 380}});
    auto salient = article_salience(d);
    REQUIRE(salient.size() == 1);
    CHECK(salient[0].salience_score == doctest::Approx(1.0));
}

TEST_CASE("salience matches the formula on every TINY6 document") {
    for (const auto& d : fixtures::tiny6().documents()) {
        std::set<std::string> got;
        for (const auto& e : article_salience(d)) got.insert(e.entity_id);
        CHECK(got == salient_oracle(d));
    }
}

TEST_CASE("selectors for police new york include Giuliani and the NYPD") {
    const auto& index = fixtures::tiny6();
    auto r = rank({"police new york"}, index);
    auto sel = query_entity_selectors(r.results, index);
    std::set<std::string> got;
    for (const auto& s : sel) got.insert(s.entity_id);
    CHECK(got.count("E:Giuliani") == 1);
    CHECK(got.count("E:NYPD") == 1);
    for (const auto& s : sel) CHECK(s.doc_frequency >= 1);
}

TEST_CASE("selector edge cases") {
    std::vector<Document> docs;
    for (int i = 0; i < 12; ++i) {
        Document d = doc_with("T", "body text", {{"E:" + std::string(1, static_cast<char>('a' + 11 - i)), 2}});
        d.doc_id = "s" + std::to_string(i);
        docs.push_back(d);
    }
    auto index = Index::build(Corpus(docs));
    std::vector<ScoredDoc> ranked;
    for (DocNum d = 0; d < index.size(); ++d) ranked.push_back({d, index.doc_id(d), 0.0, 0.0, d + 1u});

    auto one = query_entity_selectors(std::span(ranked).first(1), index);
    REQUIRE(one.size() == 1);
    CHECK(one[0].doc_frequency == 1);

    auto ten = query_entity_selectors(ranked, index);
    REQUIRE(ten.size() == 10);
    CHECK(ten.front().entity_id == "E:a");
    CHECK(ten.back().entity_id == "E:j");
    CHECK(query_entity_selectors(std::vector<ScoredDoc>{}, index).empty());
}

TEST_CASE("selectors match a brute-force pipeline") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 20; ++round) {
        auto index = Index::build(Corpus(fixtures::random_corpus(rng, 5 + fixtures::pick(rng, 40), 12, 15)));
        auto r = rank({"alpha beta gamma delta"}, index);
        SelectorParams params{static_cast<std::size_t>(1 + fixtures::pick(rng, 30)), 10};
        std::map<std::string, std::uint32_t> df;
        for (std::size_t i = 0; i < std::min(params.top_docs, r.results.size()); ++i) {
            for (const auto& e : salient_oracle(index.document(r.results[i].doc))) ++df[e];
        }
        std::vector<std::pair<std::string, std::uint32_t>> expected(df.begin(), df.end());
        std::sort(expected.begin(), expected.end(), [](auto& a, auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        if (expected.size() > 10) expected.resize(10);
        auto got = query_entity_selectors(r.results, index, params);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].entity_id == expected[i].first);
            CHECK(got[i].doc_frequency == expected[i].second);
        }
    }
}
