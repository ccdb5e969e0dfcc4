#include "expedition/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "expedition/error.hpp"
#include "expedition/timeline.hpp"
#include "expedition/tokenize.hpp"

namespace expedition {

namespace {

constexpr std::pair<RetrievalModel, std::string_view> kModelNames[] = {
    {RetrievalModel::Textual, "TEXTUAL"},
    {RetrievalModel::Temporal, "TEMPORAL"},
    {RetrievalModel::TemporalDiv, "TEMPORAL_DIV"},
    {RetrievalModel::TopicalDiv, "TOPICAL_DIV"},
    {RetrievalModel::HistDiv, "HIST_DIV"},
};

// Same total order as ranks_before, on raw candidate fields.
bool better(double va, const Candidate& a, double vb, const Candidate& b) {
    if (va != vb) return va > vb;
    if (a.lm != b.lm) return a.lm > b.lm;
    return a.doc_id < b.doc_id;
}

ScoredDoc scored(const Candidate& c, double score) { return {c.doc, c.doc_id, score, c.lm, 0}; }

// Per-term smoothing constants, aligned with `terms`.
struct TermModel {
    const TermStats* stats;
    double background;  // mu * ctf / |C|
};

std::vector<TermModel> term_models(const Index& index, std::span<const std::string> terms, double mu) {
    std::vector<TermModel> out;
    const double clen = static_cast<double>(index.collection_len());
    for (const auto& t : terms) {
        const auto* s = index.term(t);
        out.push_back({s, mu * static_cast<double>(s->collection_tf) / clen});
    }
    return out;
}

std::uint32_t tf_in(const TermStats& stats, DocNum doc) {
    auto it = std::lower_bound(stats.postings.begin(), stats.postings.end(), doc,
                               [](const Posting& p, DocNum d) { return p.doc < d; });
    return (it != stats.postings.end() && it->doc == doc) ? it->tf : 0;
}

double smoothed(std::uint32_t tf, double background, std::uint32_t len, double mu) {
    return std::log((static_cast<double>(tf) + background) / (static_cast<double>(len) + mu));
}

// Scores `docs` exhaustively; tf comes from dense per-term arrays.
std::vector<ScoredDoc> score_docs(const Index& index, std::span<const std::string> terms, std::span<const DocNum> docs,
                                  double mu) {
    const auto models = term_models(index, terms, mu);
    std::vector<std::vector<std::uint32_t>> dense(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
        dense[i].assign(index.size(), 0);
        for (const auto& p : models[i].stats->postings) dense[i][p.doc] = p.tf;
    }
    std::vector<ScoredDoc> out;
    out.reserve(docs.size());
    for (DocNum d : docs) {
        double s = 0.0;
        for (std::size_t i = 0; i < models.size(); ++i) s += smoothed(dense[i][d], models[i].background, index.doc_len(d), mu);
        out.push_back({d, index.doc_id(d), s, s, 0});
    }
    return out;
}

std::vector<ScoredDoc> top_k(std::vector<ScoredDoc> list, std::size_t k) {
    if (list.size() > k) {
        std::partial_sort(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(k), list.end(), ranks_before);
        list.resize(k);
    } else {
        std::sort(list.begin(), list.end(), ranks_before);
    }
    assign_ranks(list);
    return list;
}

double compute_gain(const Coverage& cov, std::span<const double> utility, double eta, double rel) {
    double g = 0.0;
    for (const auto& [a, v] : cov) g += utility[a] * v;
    return g + eta * rel;
}

}  // namespace

std::string_view to_string(RetrievalModel model) {
    for (const auto& [m, name] : kModelNames) {
        if (m == model) return name;
    }
    return "TEXTUAL";
}

std::optional<RetrievalModel> parse_model(std::string_view name) {
    for (const auto& [m, n] : kModelNames) {
        if (n == name) return m;
    }
    return std::nullopt;
}

bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.lm_score != b.lm_score) return a.lm_score > b.lm_score;
    return a.doc_id < b.doc_id;
}

void assign_ranks(std::vector<ScoredDoc>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) list[i].rank = i + 1;
}

void normalize_pool(CandidatePool& pool) {
    auto& items = pool.items;
    std::sort(items.begin(), items.end(), [](const Candidate& a, const Candidate& b) {
        if (a.lm != b.lm) return a.lm > b.lm;
        return a.doc_id < b.doc_id;
    });
    if (items.empty()) return;
    const double hi = items.front().lm;
    const double lo = items.back().lm;
    for (auto& c : items) c.rel = hi > lo ? (c.lm - lo) / (hi - lo) : 1.0;
}

std::vector<std::string> known_terms(const Index& index, std::span<const std::string> terms) {
    std::vector<std::string> out;
    for (const auto& t : terms) {
        if (index.term(t)) out.push_back(t);
    }
    return out;
}

double lm_score(const Index& index, std::span<const std::string> terms, DocNum doc, double mu) {
    double s = 0.0;
    for (const auto& m : term_models(index, terms, mu)) s += smoothed(tf_in(*m.stats, doc), m.background, index.doc_len(doc), mu);
    return s;
}

std::vector<ScoredDoc> score_textual(const Index& index, std::span<const std::string> terms, double mu,
                                     const Constraints& constraints) {
    if (terms.empty()) throw InvalidArgument("query has no terms");
    const auto known = known_terms(index, terms);
    if (known.empty()) throw NoMatchError("no query term occurs in the collection");
    std::vector<DocNum> docs;
    for (DocNum d = 0; d < index.size(); ++d) {
        if (matches(d, constraints, index)) docs.push_back(d);
    }
    auto list = score_docs(index, known, docs, mu);
    std::sort(list.begin(), list.end(), ranks_before);
    assign_ranks(list);
    return list;
}

CandidatePool build_pool(const Index& index, std::span<const std::string> terms, const Constraints& constraints,
                         const Params& params) {
    CandidatePool pool;
    pool.terms = known_terms(index, terms);
    std::vector<DocNum> docs;
    for (const auto& t : pool.terms) {
        for (const auto& p : index.term(t)->postings) docs.push_back(p.doc);
    }
    std::sort(docs.begin(), docs.end());
    docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
    std::erase_if(docs, [&](DocNum d) { return !matches(d, constraints, index); });
    pool.total_matching = docs.size();

    auto list = top_k(score_docs(index, pool.terms, docs, params.mu), params.pool_size);
    pool.items.reserve(list.size());
    for (const auto& s : list) {
        pool.items.push_back({s.doc, s.doc_id, s.lm_score, 0.0, index.doc_bucket(s.doc), index.doc_entities(s.doc)});
    }
    normalize_pool(pool);
    return pool;
}

std::vector<ScoredDoc> rank_textual(const CandidatePool& pool, std::size_t k) {
    std::vector<ScoredDoc> out;
    for (const auto& c : pool.items) out.push_back(scored(c, c.lm));
    return top_k(std::move(out), k);
}

std::vector<ScoredDoc> rank_temporal(const CandidatePool& pool, const MonthlyDistribution& ptime, std::size_t k,
                                     double epsilon) {
    std::vector<ScoredDoc> out;
    for (const auto& c : pool.items) out.push_back(scored(c, c.rel * (ptime.at(c.bucket) + epsilon)));
    return top_k(std::move(out), k);
}

std::vector<ScoredDoc> diversify_temporal(const CandidatePool& pool, std::size_t k, double gamma) {
    // Pool order is rel-descending, so inside one month only the head can win.
    std::map<Month, std::vector<const Candidate*>> by_bucket;
    for (const auto& c : pool.items) by_bucket[c.bucket].push_back(&c);
    struct Queue {
        std::vector<const Candidate*> items;
        std::size_t next = 0;
        std::size_t taken = 0;
    };
    std::vector<Queue> queues;
    for (auto& [m, items] : by_bucket) queues.push_back({std::move(items), 0, 0});

    std::vector<ScoredDoc> out;
    const std::size_t limit = std::min(k, pool.items.size());
    while (out.size() < limit) {
        Queue* best = nullptr;
        double best_value = 0.0;
        for (auto& q : queues) {
            if (q.next == q.items.size()) continue;
            const Candidate& c = *q.items[q.next];
            const double value = c.rel * std::exp(-gamma * static_cast<double>(q.taken));
            if (!best || better(value, c, best_value, *best->items[best->next])) {
                best = &q;
                best_value = value;
            }
        }
        out.push_back(scored(*best->items[best->next], best_value));
        ++best->next;
        ++best->taken;
    }
    assign_ranks(out);
    return out;
}

std::vector<Aspect> aspect_priors(const CandidatePool& pool, std::size_t prior_docs) {
    std::map<std::string, std::size_t> df;
    std::size_t total = 0;
    const std::size_t n = std::min(prior_docs, pool.items.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : pool.items[i].entities) {
            ++df[e];
            ++total;
        }
    }
    std::vector<Aspect> out;
    for (const auto& [e, count] : df) out.push_back({e, static_cast<double>(count) / static_cast<double>(total)});
    std::stable_sort(out.begin(), out.end(), [](const Aspect& a, const Aspect& b) { return a.prior > b.prior; });
    return out;
}

std::vector<ScoredDoc> ia_select(const CandidatePool& pool, std::span<const double> priors,
                                 std::span<const Coverage> coverage, std::size_t k, double eta, IaSelectTrace* trace) {
    const auto& items = pool.items;
    if (coverage.size() != items.size()) throw InvalidArgument("coverage must align with the pool");
    std::vector<double> utility(priors.begin(), priors.end());

    // Lazy greedy: gains only shrink as U decreases, so a stale gain is an upper bound.
    struct Entry {
        double gain;
        std::size_t item;
        std::size_t stamp;
    };
    auto worse = [&](const Entry& a, const Entry& b) { return better(b.gain, items[b.item], a.gain, items[a.item]); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    for (std::size_t i = 0; i < items.size(); ++i) {
        heap.push({compute_gain(coverage[i], utility, eta, items[i].rel), i, 0});
    }

    std::vector<ScoredDoc> out;
    const std::size_t limit = std::min(k, items.size());
    for (std::size_t step = 0; out.size() < limit; ++step) {
        for (;;) {
            Entry top = heap.top();
            heap.pop();
            if (top.stamp == step) {
                out.push_back(scored(items[top.item], top.gain));
                for (const auto& [a, v] : coverage[top.item]) utility[a] *= 1.0 - v;
                if (trace) trace->utility.push_back(utility);
                break;
            }
            top.gain = compute_gain(coverage[top.item], utility, eta, items[top.item].rel);
            top.stamp = step;
            heap.push(top);
        }
    }
    assign_ranks(out);
    return out;
}

std::vector<ScoredDoc> diversify_topical(const CandidatePool& pool, std::span<const Aspect> aspects, std::size_t k,
                                         double eta, IaSelectTrace* trace) {
    std::map<std::string_view, std::size_t> slot;
    std::vector<double> priors;
    for (std::size_t a = 0; a < aspects.size(); ++a) {
        slot.emplace(aspects[a].entity_id, a);
        priors.push_back(aspects[a].prior);
    }
    std::vector<Coverage> coverage(pool.items.size());
    for (std::size_t i = 0; i < pool.items.size(); ++i) {
        for (const auto& e : pool.items[i].entities) {
            if (auto it = slot.find(e); it != slot.end()) coverage[i].emplace_back(it->second, pool.items[i].rel);
        }
        std::sort(coverage[i].begin(), coverage[i].end());
    }
    return ia_select(pool, priors, coverage, k, eta, trace);
}

std::vector<ScoredDoc> diversify_historical(const CandidatePool& pool, std::span<const Aspect> aspects,
                                            const MonthlyDistribution& ptime, std::size_t k,
                                            const HistoricalParams& params, IaSelectTrace* trace) {
    std::vector<Aspect> entities(aspects.begin(), aspects.end());
    std::stable_sort(entities.begin(), entities.end(), [](const Aspect& a, const Aspect& b) {
        if (a.prior != b.prior) return a.prior > b.prior;
        return a.entity_id < b.entity_id;
    });
    if (entities.size() > params.top_entities) entities.resize(params.top_entities);

    std::vector<std::pair<Month, double>> months;
    for (std::size_t i = 0; i < ptime.mass.size(); ++i) {
        if (ptime.mass[i] > 0.0) months.emplace_back(ptime.span.first + static_cast<int>(i), ptime.mass[i]);
    }
    std::stable_sort(months.begin(), months.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (months.size() > params.top_buckets) months.resize(params.top_buckets);

    // Compound aspect (entity e, month b) lives at slot e * |months| + b.
    const std::size_t nb = months.size();
    std::vector<double> priors(entities.size() * nb);
    double total = 0.0;
    for (std::size_t e = 0; e < entities.size(); ++e) {
        for (std::size_t b = 0; b < nb; ++b) {
            priors[e * nb + b] = entities[e].prior * months[b].second;
            total += priors[e * nb + b];
        }
    }
    if (total > 0.0) {
        for (auto& p : priors) p /= total;
    }

    std::map<std::string_view, std::size_t> entity_slot;
    for (std::size_t e = 0; e < entities.size(); ++e) entity_slot.emplace(entities[e].entity_id, e);
    std::map<Month, std::size_t> month_slot;
    for (std::size_t b = 0; b < nb; ++b) month_slot.emplace(months[b].first, b);

    std::vector<Coverage> coverage(pool.items.size());
    for (std::size_t i = 0; i < pool.items.size(); ++i) {
        const auto& c = pool.items[i];
        auto mb = month_slot.find(c.bucket);
        if (mb == month_slot.end()) continue;
        for (const auto& e : c.entities) {
            if (auto it = entity_slot.find(e); it != entity_slot.end()) {
                coverage[i].emplace_back(it->second * nb + mb->second, c.rel);
            }
        }
        std::sort(coverage[i].begin(), coverage[i].end());
    }
    return ia_select(pool, priors, coverage, k, params.eta, trace);
}

Ranking rank(const QueryRequest& request, const Index& index, const Params& params) {
    const auto terms = tokenize(request.q);
    if (terms.empty()) throw InvalidArgument("empty query");
    if (request.k == 0) throw InvalidArgument("k must be >= 1");

    Ranking out;
    if (known_terms(index, terms).empty()) {
        out.status = MatchStatus::UnseenTerms;
        return out;
    }
    const auto constraints = clip_to_span(request.constraints, index.span());
    out.pool = build_pool(index, terms, constraints, params);
    if (out.pool.empty()) {
        out.status = MatchStatus::NoConstrainedMatches;
        return out;
    }

    const std::size_t k = request.k;
    switch (request.model) {
        case RetrievalModel::Textual:
            out.results = rank_textual(out.pool, k);
            break;
        case RetrievalModel::Temporal: {
            auto profile = temporal_profile(out.pool, index, params.alpha);
            out.results = rank_temporal(out.pool, profile.combined_distribution(), k, params.epsilon);
            break;
        }
        case RetrievalModel::TemporalDiv:
            out.results = diversify_temporal(out.pool, k, params.gamma);
            break;
        case RetrievalModel::TopicalDiv: {
            auto aspects = aspect_priors(out.pool, params.prior_docs);
            out.results = diversify_topical(out.pool, aspects, k, params.eta);
            break;
        }
        case RetrievalModel::HistDiv: {
            auto aspects = aspect_priors(out.pool, params.prior_docs);
            auto profile = temporal_profile(out.pool, index, params.alpha);
            out.results = diversify_historical(out.pool, aspects, profile.combined_distribution(), k,
                                               {params.hist_entities, params.hist_buckets, params.eta});
            break;
        }
    }
    return out;
}

}  // namespace expedition
