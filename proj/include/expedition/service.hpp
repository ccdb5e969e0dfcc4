#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expedition/entities.hpp"
#include "expedition/index.hpp"
#include "expedition/params.hpp"
#include "expedition/ranking.hpp"
#include "expedition/refine.hpp"
#include "expedition/timeline.hpp"

namespace expedition {

/// Word budgets of the three preview sizes.
struct SnippetTiers {
    std::size_t large = 100;   // ranks 1-2
    std::size_t medium = 60;   // ranks 3-6
    std::size_t small = 30;    // rank 7 and below

    std::size_t budget(std::size_t rank) const;
};

/// Start of the W-token window with the most distinct query terms (earliest on ties).
std::size_t best_window(std::span<const std::string> tokens, std::span<const std::string> query_terms, std::size_t width);

/// Query-biased preview of title + body sized by rank tier. Falls back to the leading tokens.
std::string snippet_for(const Document& doc, std::span<const std::string> query_terms, std::size_t rank,
                        const SnippetTiers& tiers = {});

struct SearchResult {
    std::size_t rank = 0;
    std::string doc_id;
    std::string headline;
    std::string snippet;
    Date published;
    std::string article_type;
    double score = 0.0;
    bool pinned = false;  // carried over from the previous result list
    std::vector<SalientEntity> salient_entities;
};

struct SearchResponse {
    std::vector<SearchResult> results;
    std::size_t total_matching = 0;
    bool no_matches = false;
    std::vector<std::string> warnings;
};

struct DocumentView {
    const Document* doc = nullptr;
    std::vector<SalientEntity> salient_entities;
};

struct HealthInfo {
    std::size_t doc_count = 0;
    MonthInterval span;
    std::uint32_t format_version = 0;
    std::size_t vocabulary = 0;
};

/// Stateless query facade over one immutable index; safe to share between threads.
class Engine {
public:
    explicit Engine(std::shared_ptr<const Index> index, Params defaults = {}, SnippetTiers tiers = {});

    SearchResponse search(const QueryRequest& request, const Params& params) const;
    SearchResponse search(const QueryRequest& request) const { return search(request, defaults_); }

    /// Timeline of the constrained pool with the requested model's top placements.
    TimelineProfile timeline(const QueryRequest& request, const Params& params) const;
    std::vector<SalientEntity> entities(const QueryRequest& request, const Params& params) const;
    std::optional<DocumentView> document(std::string_view doc_id) const;
    HealthInfo health() const;

    const Index& index() const { return *index_; }
    const Params& defaults() const { return defaults_; }

private:
    RefineResult run(const QueryRequest& request, const Params& params) const;

    std::shared_ptr<const Index> index_;
    Params defaults_;
    SnippetTiers tiers_;
};

}  // namespace expedition
