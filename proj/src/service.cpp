#include "expedition/service.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "expedition/error.hpp"
#include "expedition/tokenize.hpp"

namespace expedition {

std::size_t SnippetTiers::budget(std::size_t rank) const {
    if (rank <= 2) return large;
    if (rank <= 6) return medium;
    return small;
}

std::size_t best_window(std::span<const std::string> tokens, std::span<const std::string> query_terms, std::size_t width) {
    if (width == 0 || tokens.size() <= width) return 0;
    const std::set<std::string_view> wanted(query_terms.begin(), query_terms.end());
    std::map<std::string_view, std::size_t> inside;
    std::size_t distinct = 0;
    auto add = [&](std::string_view t) {
        if (wanted.count(t) && inside[t]++ == 0) ++distinct;
    };
    auto remove = [&](std::string_view t) {
        if (wanted.count(t) && --inside[t] == 0) --distinct;
    };
    for (std::size_t i = 0; i < width; ++i) add(tokens[i]);
    std::size_t best = 0, best_distinct = distinct;
    for (std::size_t start = 1; start + width <= tokens.size(); ++start) {
        remove(tokens[start - 1]);
        add(tokens[start + width - 1]);
        if (distinct > best_distinct) {
            best = start;
            best_distinct = distinct;
        }
    }
    return best;
}

std::string snippet_for(const Document& doc, std::span<const std::string> query_terms, std::size_t rank,
                        const SnippetTiers& tiers) {
    const std::string text = doc.text();
    const auto tokens = tokenize_with_offsets(text);
    if (tokens.empty()) return {};
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens) words.push_back(t.text);
    const std::size_t width = std::min(tiers.budget(rank), tokens.size());
    const std::size_t start = best_window(words, query_terms, width);
    const auto& first = tokens[start];
    const auto& last = tokens[start + width - 1];
    std::string out = text.substr(first.begin, last.end - first.begin);
    std::replace(out.begin(), out.end(), '\n', ' ');
    return out;
}

Engine::Engine(std::shared_ptr<const Index> index, Params defaults, SnippetTiers tiers)
    : index_(std::move(index)), defaults_(defaults), tiers_(tiers) {
    if (!index_) throw InvalidArgument("engine needs an index");
}

RefineResult Engine::run(const QueryRequest& request, const Params& params) const {
    if (tokenize(request.q).empty()) throw InvalidArgument("empty query");
    if (request.k == 0) throw InvalidArgument("k must be >= 1");
    return refine(request.prev, request, *index_, params);
}

SearchResponse Engine::search(const QueryRequest& request, const Params& params) const {
    auto refined = run(request, params);
    SearchResponse out;
    out.no_matches = refined.status != MatchStatus::Ok;
    out.total_matching = refined.pool.total_matching;
    for (const auto& id : refined.dropped_ids) out.warnings.push_back("unknown previous result id '" + id + "' dropped");
    const auto terms = tokenize(request.q);
    for (std::size_t i = 0; i < refined.results.size(); ++i) {
        const auto& s = refined.results[i];
        const auto& doc = index_->document(s.doc);
        out.results.push_back({s.rank, s.doc_id, doc.title, snippet_for(doc, terms, s.rank, tiers_), doc.published,
                               doc.article_type, s.score, i < refined.pinned, index_->doc_salience(s.doc)});
    }
    return out;
}

TimelineProfile Engine::timeline(const QueryRequest& request, const Params& params) const {
    return run(request, params).timeline;
}

std::vector<SalientEntity> Engine::entities(const QueryRequest& request, const Params& params) const {
    return run(request, params).selectors;
}

std::optional<DocumentView> Engine::document(std::string_view doc_id) const {
    auto d = index_->find(doc_id);
    if (!d) return std::nullopt;
    return DocumentView{&index_->document(*d), index_->doc_salience(*d)};
}

HealthInfo Engine::health() const {
    return {index_->size(), index_->span(), Index::kFormatVersion, index_->vocabulary_size()};
}

}  // namespace expedition
