#include <doctest.h>

#include <numeric>

#include "expedition/ranking.hpp"
#include "expedition/timeline.hpp"
#include "expedition/tokenize.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace expedition;

namespace {

CandidatePool pool_for(const Index& index, const std::string& q) {
    return build_pool(index, tokenize(q), {}, Params{});
}

const BucketMass& at(const TimelineProfile& p, Month m) { return p.buckets.at(static_cast<std::size_t>(m - p.span.first)); }

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("WTC profile: publication and reference mass") {
    const auto& index = fixtures::tiny6();
    auto p = temporal_profile(pool_for(index, "world trade center"), index, 0.5);
    CHECK(p.span.to_string() == "1990-05..2001-09");
    CHECK(p.buckets.size() == 137);
    CHECK(at(p, Month(1993, 2)).p_pub == doctest::Approx(0.5));
    CHECK(at(p, Month(2001, 9)).p_pub == doctest::Approx(0.5));
    CHECK(at(p, Month(1993, 2)).p_ref == doctest::Approx(2.0 / 3.0));
    CHECK(at(p, Month(2001, 9)).p_ref == doctest::Approx(1.0 / 3.0));
    CHECK(at(p, Month(1993, 2)).p_combined == doctest::Approx(7.0 / 12.0));
    CHECK(at(p, Month(2001, 9)).p_combined == doctest::Approx(5.0 / 12.0));
    CHECK(p.has_refs);
    CHECK_FALSE(p.no_data);
}

TEST_CASE("single document without references") {
    const auto& index = fixtures::tiny6();
    auto p = temporal_profile(pool_for(index, "marathon"), index, 0.5);
    for (const auto& b : p.buckets) CHECK(b.p_combined == (b.month == Month(1990, 5) ? 1.0 : 0.0));
    CHECK_FALSE(p.has_refs);
}

TEST_CASE("a year reference spreads over twelve months") {
    const auto& index = fixtures::tiny6();
    auto p = temporal_profile(pool_for(index, "budget"), index, 0.5);
    for (int m = 1; m <= 12; ++m) CHECK(at(p, Month(1997, m)).p_ref == doctest::Approx(1.0 / 12.0));
    CHECK(at(p, Month(1998, 1)).p_ref == 0.0);
}

TEST_CASE("empty pool is flagged") {
    const auto& index = fixtures::tiny6();
    auto p = temporal_profile(CandidatePool{}, index, 0.5);
    CHECK(p.no_data);
    CHECK(detect_bursts(p, 1.0).empty());
}

TEST_CASE("alpha extremes select one distribution exactly") {
    const auto& index = fixtures::tiny6();
    auto pool = pool_for(index, "police new york world");
    auto pub = temporal_profile(pool, index, 1.0);
    auto ref = temporal_profile(pool, index, 0.0);
    REQUIRE(ref.has_refs);
    for (std::size_t i = 0; i < pub.buckets.size(); ++i) {
        CHECK(pub.buckets[i].p_combined == pub.buckets[i].p_pub);
        CHECK(ref.buckets[i].p_combined == ref.buckets[i].p_ref);
    }
}

TEST_CASE("profiles are normalized on random corpora") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 30; ++round) {
        auto index = Index::build(Corpus(fixtures::random_corpus(rng, 2 + fixtures::pick(rng, 25))));
        auto p = temporal_profile(pool_for(index, "alpha beta ent1"), index, 0.5);
        if (p.no_data) continue;
        std::vector<double> pub, comb;
        for (const auto& b : p.buckets) {
            pub.push_back(b.p_pub);
            comb.push_back(b.p_combined);
        }
        CHECK(std::fabs(sum(pub) - 1.0) <= 1e-9);
        CHECK(std::fabs(sum(comb) - 1.0) <= 1e-9);
    }
}

TEST_CASE("burst runs") {
    SUBCASE("uniform series") {
        std::vector<double> flat(24, 1.0 / 24.0);
        CHECK(burst_runs(flat, 1.0).empty());
    }
    SUBCASE("one spike among 23 low months") {
        std::vector<double> s(24, 0.02);
        s[10] = 0.54;
        // mean = 1/24 ~ 0.0417, population sd ~ 0.104, threshold ~ 0.146
        auto runs = burst_runs(s, 1.0);
        REQUIRE(runs.size() == 1);
        CHECK(runs[0].begin == 10);
        CHECK(runs[0].end == 10);
        CHECK(runs[0].peak == 10);
    }
    SUBCASE("two separated spikes") {
        std::vector<double> s(24, 0.02);
        s[3] = 0.3;
        s[15] = 0.28;
        auto runs = burst_runs(s, 1.0);
        REQUIRE(runs.size() == 2);
        CHECK(runs[0].end < runs[1].begin);
    }
    SUBCASE("adjacent months merge; peak is the earliest maximum") {
        std::vector<double> s(20, 0.01);
        s[5] = 0.3;
        s[6] = 0.3;
        s[7] = 0.2;
        auto runs = burst_runs(s, 1.0);
        REQUIRE(runs.size() == 1);
        CHECK(runs[0].begin == 5);
        CHECK(runs[0].end == 7);
        CHECK(runs[0].peak == 5);
    }
    SUBCASE("fewer than two buckets") { CHECK(burst_runs(std::vector<double>{1.0}, 1.0).empty()); }
}

TEST_CASE("burst soundness and completeness against the oracle") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> s(2 + fixtures::pick(rng, 40));
        for (auto& x : s) x = static_cast<double>(fixtures::pick(rng, 5)) * (fixtures::pick(rng, 6) == 0 ? 10.0 : 1.0);
        double total = sum(s);
        if (total == 0) continue;
        for (auto& x : s) x /= total;
        std::vector<int> owner(s.size(), 0);
        for (const auto& r : burst_runs(s, 1.0)) {
            for (std::size_t i = r.begin; i <= r.end; ++i) ++owner[i];
            if (r.begin > 0) CHECK(owner[r.begin - 1] == 0);
        }
        std::vector<int> expected(s.size(), 0);
        for (auto i : oracle::bursting_buckets(s, 1.0)) expected[i] = 1;
        CHECK(owner == expected);
    }
}

TEST_CASE("labels come from pool documents published inside the burst") {
    const auto& index = fixtures::tiny6();
    auto pool = pool_for(index, "world trade center");
    std::vector<Burst> bursts{{Month(1993, 2), Month(1993, 2), Month(1993, 2), {}, false},
                              {Month(1997, 3), Month(1997, 3), Month(1997, 3), {}, false}};
    label_bursts(bursts, pool, index);
    REQUIRE(bursts[0].labels.size() == 1);
    CHECK(bursts[0].labels[0].find("World Trade Center bombing") != std::string::npos);
    CHECK_FALSE(bursts[0].reference_driven);
    CHECK(bursts[1].labels.empty());
    CHECK(bursts[1].reference_driven);
}

TEST_CASE("labels are capped at three, best textual score first") {
    std::vector<Document> docs;
    for (int i = 0; i < 5; ++i) {
        Document d;
        d.doc_id = "x" + std::to_string(i);
        d.title = "Headline " + std::to_string(i);
        d.body = "storm";
        for (int r = 0; r < i; ++r) d.body += " storm";
        d.published = Date{2000, 3, 1};
        d.article_type = "news";
        docs.push_back(d);
    }
    auto index = Index::build(Corpus(docs));
    auto pool = pool_for(index, "storm");
    std::vector<Burst> bursts{{Month(2000, 3), Month(2000, 3), Month(2000, 3), {}, false}};
    label_bursts(bursts, pool, index);
    REQUIRE(bursts[0].labels.size() == 3);
    CHECK(bursts[0].labels[0] == index.document(pool.items[0].doc).title);
}

TEST_CASE("placements") {
    const auto& index = fixtures::tiny6();
    QueryRequest req{"police new york world trade"};
    auto r = rank(req, index);
    REQUIRE(r.results.size() == 6);
    CHECK(place_top_docs(r.results, index).size() == 6);
    CHECK(place_top_docs(std::vector<ScoredDoc>{}, index).empty());
    CHECK(place_top_docs(r.results, index, 2).size() == 2);

    QueryRequest wtc{"world trade center", RetrievalModel::TemporalDiv};
    wtc.k = 2;
    auto placements = place_top_docs(rank(wtc, index).results, index);
    REQUIRE(placements.size() == 2);
    CHECK(placements[0].month != placements[1].month);
}
