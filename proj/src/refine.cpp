#include "expedition/refine.hpp"

#include <algorithm>
#include <set>

#include "expedition/tokenize.hpp"

namespace expedition {

RefineResult refine(std::span<const std::string> previous, const QueryRequest& request, const Index& index,
                    const Params& params) {
    RefineResult out;
    const auto constraints = clip_to_span(request.constraints, index.span());
    const auto terms = known_terms(index, tokenize(request.q));

    std::set<DocNum> pinned;
    std::vector<ScoredDoc> head;
    for (const auto& id : previous) {
        auto doc = index.find(id);
        if (!doc) {
            out.dropped_ids.push_back(id);
            continue;
        }
        if (!matches(*doc, constraints, index) || !pinned.insert(*doc).second) continue;
        const double lm = terms.empty() ? 0.0 : lm_score(index, terms, *doc, params.mu);
        head.push_back({*doc, id, lm, lm, 0});
    }

    // Selectors read the top selector_docs of the list, so rank at least that deep.
    // Every model is prefix-stable in k, so the displayed list is a prefix of this one.
    const std::size_t limit = std::max(request.k, head.size());
    const std::size_t depth = std::max(limit, params.selector_docs);
    QueryRequest widened = request;
    widened.constraints = constraints;
    widened.k = depth + head.size();
    auto ranking = rank(widened, index, params);
    out.pool = std::move(ranking.pool);

    if (ranking.status == MatchStatus::UnseenTerms) {
        out.status = MatchStatus::UnseenTerms;
        out.timeline = build_timeline(out.pool, out.results, index, params);
        return out;
    }

    out.pinned = head.size();
    std::vector<ScoredDoc> list = std::move(head);
    for (auto& s : ranking.results) {
        if (list.size() >= depth) break;
        if (!pinned.count(s.doc)) list.push_back(std::move(s));
    }
    assign_ranks(list);
    out.selectors = query_entity_selectors(list, index, {params.selector_docs, params.max_selectors});
    if (list.size() > limit) list.resize(limit);
    out.results = std::move(list);
    if (out.results.empty()) out.status = MatchStatus::NoConstrainedMatches;

    out.timeline = build_timeline(out.pool, out.results, index, params);
    return out;
}

}  // namespace expedition
