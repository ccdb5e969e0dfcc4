#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expedition/constraints.hpp"
#include "expedition/index.hpp"
#include "expedition/month.hpp"
#include "expedition/params.hpp"

namespace expedition {

enum class RetrievalModel { Textual, Temporal, TemporalDiv, TopicalDiv, HistDiv };

inline constexpr RetrievalModel kAllModels[] = {RetrievalModel::Textual, RetrievalModel::Temporal,
                                                RetrievalModel::TemporalDiv, RetrievalModel::TopicalDiv,
                                                RetrievalModel::HistDiv};

/// "TEXTUAL", "TEMPORAL", "TEMPORAL_DIV", "TOPICAL_DIV", "HIST_DIV".
std::string_view to_string(RetrievalModel model);
std::optional<RetrievalModel> parse_model(std::string_view name);

struct ScoredDoc {
    DocNum doc = 0;
    std::string doc_id;
    double score = 0.0;
    double lm_score = 0.0;  // textual score, first tie-breaker
    std::size_t rank = 0;   // 1-based

    bool operator==(const ScoredDoc&) const = default;
};

/// Ordering used for every ranked list: score desc, lm desc, doc_id asc.
bool ranks_before(const ScoredDoc& a, const ScoredDoc& b);

/// Renumbers ranks 1..n in list order.
void assign_ranks(std::vector<ScoredDoc>& list);

struct Candidate {
    DocNum doc = 0;
    std::string doc_id;
    double lm = 0.0;
    double rel = 0.0;  // min-max normalized lm within the pool
    Month bucket;
    std::vector<std::string> entities;  // distinct, sorted
};

/// Top documents by textual score, lm descending. Greedy selectors work on
/// this alone, so tests can hand-build pools without an index.
struct CandidatePool {
    std::vector<std::string> terms;
    std::vector<Candidate> items;
    std::size_t total_matching = 0;  // matching documents before truncation to the pool size

    bool empty() const { return items.empty(); }
};

/// Sorts by lm (desc, then doc_id) and fills `rel`. A pool whose scores are all
/// equal, including a single-document pool, gets rel = 1 everywhere.
void normalize_pool(CandidatePool& pool);

/// Probability mass per month over a contiguous span.
struct MonthlyDistribution {
    MonthInterval span;
    std::vector<double> mass;

    double at(Month m) const {
        if (!span.contains(m) || mass.empty()) return 0.0;
        return mass[static_cast<std::size_t>(m - span.first)];
    }
};

struct Aspect {
    std::string entity_id;
    double prior = 0.0;
};

/// Tokenized query with terms unseen in the collection removed (order and repeats kept).
std::vector<std::string> known_terms(const Index& index, std::span<const std::string> terms);

/// Dirichlet-smoothed query log-likelihood of one document. Unseen terms must be removed first.
double lm_score(const Index& index, std::span<const std::string> terms, DocNum doc, double mu);

/// Scores every document that satisfies `constraints` (smoothing gives non-matching
/// documents a finite score). Unseen terms are dropped; throws NoMatchError if none remain
/// and InvalidArgument if `terms` is empty.
std::vector<ScoredDoc> score_textual(const Index& index, std::span<const std::string> terms, double mu,
                                     const Constraints& constraints = {});

/// Pseudo-relevant pool: documents containing at least one query term and satisfying
/// the constraints, best `pool_size` by textual score.
CandidatePool build_pool(const Index& index, std::span<const std::string> terms, const Constraints& constraints,
                         const Params& params);

std::vector<ScoredDoc> rank_textual(const CandidatePool& pool, std::size_t k);

/// score = rel * (Ptime(bucket) + epsilon).
std::vector<ScoredDoc> rank_temporal(const CandidatePool& pool, const MonthlyDistribution& ptime, std::size_t k,
                                     double epsilon);

/// Greedy: argmax rel * exp(-gamma * already_selected_in_bucket).
std::vector<ScoredDoc> diversify_temporal(const CandidatePool& pool, std::size_t k, double gamma);

/// Entity document frequency over the first `prior_docs` pool items, normalized.
/// Sorted by prior desc, then entity id.
std::vector<Aspect> aspect_priors(const CandidatePool& pool, std::size_t prior_docs);

/// Coverage of one pool item: (aspect index, V(d|a)) pairs, aspect index ascending.
using Coverage = std::vector<std::pair<std::size_t, double>>;

/// U(a) after each selection step; filled only when requested.
struct IaSelectTrace {
    std::vector<std::vector<double>> utility;
};

/// IA-Select greedy over precomputed coverage:
/// g(d) = sum_a U(a) V(d|a) + eta * rel(d); after picking d*, U(a) *= 1 - V(d*|a).
std::vector<ScoredDoc> ia_select(const CandidatePool& pool, std::span<const double> priors,
                                 std::span<const Coverage> coverage, std::size_t k, double eta,
                                 IaSelectTrace* trace = nullptr);

std::vector<ScoredDoc> diversify_topical(const CandidatePool& pool, std::span<const Aspect> aspects, std::size_t k,
                                         double eta, IaSelectTrace* trace = nullptr);

struct HistoricalParams {
    std::size_t top_entities = 20;
    std::size_t top_buckets = 20;
    double eta = 0.01;
};

/// IA-Select over compound (entity, month) aspects with P(a, b) proportional to P(a) * Ptime(b).
std::vector<ScoredDoc> diversify_historical(const CandidatePool& pool, std::span<const Aspect> aspects,
                                            const MonthlyDistribution& ptime, std::size_t k,
                                            const HistoricalParams& params, IaSelectTrace* trace = nullptr);

struct QueryRequest {
    std::string q;
    RetrievalModel model = RetrievalModel::Textual;
    Constraints constraints;
    std::vector<std::string> prev;  // previous result ids, for refinement
    std::size_t k = 50;
};

enum class MatchStatus { Ok, UnseenTerms, NoConstrainedMatches };

struct Ranking {
    CandidatePool pool;
    std::vector<ScoredDoc> results;
    MatchStatus status = MatchStatus::Ok;
};

/// Runs the requested model on the constrained pool. Throws InvalidArgument when the
/// query has no tokens or k == 0.
Ranking rank(const QueryRequest& request, const Index& index, const Params& params = {});

}  // namespace expedition
