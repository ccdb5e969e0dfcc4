#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "expedition/corpus.hpp"
#include "expedition/index.hpp"
#include "expedition/ranking.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace expedition;

inline std::filesystem::path data_dir() { return EXPEDITION_TEST_DATA_DIR; }
inline std::filesystem::path tiny6_path() { return data_dir() / "tiny6.jsonl"; }

inline const Index& tiny6() {
    static const Index index = [] {
        auto result = ingest(tiny6_path());
        return Index::build(result.corpus);
    }();
    return index;
}

inline std::shared_ptr<const Index> tiny6_shared() {
    static const auto ptr = std::make_shared<const Index>(tiny6());
    return ptr;
}

inline std::vector<std::string> ids(const std::vector<ScoredDoc>& list) {
    std::vector<std::string> out;
    for (const auto& s : list) out.push_back(s.doc_id);
    return out;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Small random archive. Words come from a tiny vocabulary so terms repeat;
// entities appear as capitalised tokens with matching mention offsets.
inline std::vector<Document> random_corpus(std::mt19937_64& rng, std::size_t n_docs, std::size_t vocab = 12,
                                           std::size_t n_entities = 6, int n_months = 12) {
    static const char* kWords[] = {"alpha", "beta", "gamma", "delta", "echo", "fox", "golf", "hotel",
                                   "india", "juliet", "kilo", "lima", "mike", "nova", "oscar", "papa"};
    vocab = std::min<std::size_t>(vocab, std::size(kWords));
    std::vector<Document> docs;
    for (std::size_t i = 0; i < n_docs; ++i) {
        Document d;
        d.doc_id = "r" + std::to_string(i);
        Month m = Month(2000, 1) + static_cast<int>(pick(rng, static_cast<std::size_t>(n_months)));
        d.published = Date{m.year(), m.month(), 1 + static_cast<int>(pick(rng, 28))};
        d.article_type = pick(rng, 3) == 0 ? "opinion" : "news";

        auto add_entity = [&](std::string& text, bool title) {
            std::size_t e = pick(rng, n_entities);
            std::string surface = "Ent" + std::to_string(e);
            if (!text.empty()) text += ' ';
            std::size_t start = (title ? 0 : d.title.size() + 1) + text.size();
            text += surface;
            d.entity_mentions.push_back({"E:" + std::to_string(e), surface, start, start + surface.size(), title});
        };
        std::size_t title_words = 1 + pick(rng, 4);
        for (std::size_t w = 0; w < title_words; ++w) {
            if (n_entities > 0 && pick(rng, 6) == 0) {
                add_entity(d.title, true);
            } else {
                if (!d.title.empty()) d.title += ' ';
                d.title += kWords[pick(rng, vocab)];
            }
        }
        std::size_t body_words = pick(rng, 25);
        for (std::size_t w = 0; w < body_words; ++w) {
            if (n_entities > 0 && pick(rng, 5) == 0) {
                add_entity(d.body, false);
            } else {
                if (!d.body.empty()) d.body += pick(rng, 4) == 0 ? ", " : " ";
                d.body += kWords[pick(rng, vocab)];
            }
        }
        if (!d.body.empty() && pick(rng, 3) == 0) {
            Month a = Month(2000, 1) + static_cast<int>(pick(rng, static_cast<std::size_t>(n_months + 6))) + (-3);
            Month b = a + static_cast<int>(pick(rng, 4));
            std::size_t start = d.title.size() + 1;
            d.temporal_refs.push_back({a, b, start, start + 1});
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

// Pool with lm values on a coarse grid so ties are common.
inline CandidatePool random_pool(std::mt19937_64& rng, std::size_t n, std::size_t n_aspects, int n_buckets) {
    CandidatePool pool;
    for (std::size_t i = 0; i < n; ++i) {
        Candidate c;
        c.doc = static_cast<DocNum>(i);
        c.doc_id = "p" + std::to_string(100 + i);
        c.lm = -static_cast<double>(pick(rng, 8)) * 0.25 - 3.0;
        c.bucket = Month(1995, 1) + static_cast<int>(pick(rng, static_cast<std::size_t>(n_buckets)));
        for (std::size_t a = 0; a < n_aspects; ++a) {
            if (pick(rng, 3) == 0) c.entities.push_back("A" + std::to_string(a));
        }
        pool.items.push_back(std::move(c));
    }
    normalize_pool(pool);
    return pool;
}

inline std::vector<oracle::Item> oracle_items(const CandidatePool& pool) {
    std::vector<oracle::Item> out;
    for (const auto& c : pool.items) {
        out.push_back({c.doc_id, c.lm, c.rel, c.bucket.index(), {c.entities.begin(), c.entities.end()}});
    }
    return out;
}

}  // namespace fixtures
