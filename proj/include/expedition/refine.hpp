#pragma once

#include <span>
#include <string>
#include <vector>

#include "expedition/entities.hpp"
#include "expedition/index.hpp"
#include "expedition/ranking.hpp"
#include "expedition/timeline.hpp"

namespace expedition {

struct RefineResult {
    std::vector<ScoredDoc> results;
    std::size_t pinned = 0;  // leading results carried over from `previous`
    MatchStatus status = MatchStatus::Ok;
    CandidatePool pool;
    TimelineProfile timeline;
    std::vector<SalientEntity> selectors;
    std::vector<std::string> dropped_ids;  // ids in `previous` unknown to the index
};

/// Re-query under the request's constraints. Previous results that still match come
/// first in their original order (scored by their textual LM score), followed by the
/// model's ranking of the constrained pool minus those documents. The list holds
/// max(k, pinned) entries at most. Timeline and selectors are recomputed from the output.
RefineResult refine(std::span<const std::string> previous, const QueryRequest& request, const Index& index,
                    const Params& params = {});

}  // namespace expedition
