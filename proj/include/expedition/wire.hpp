#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "expedition/params.hpp"
#include "expedition/ranking.hpp"
#include "expedition/service.hpp"
#include "expedition/session.hpp"
#include "expedition/timeline.hpp"

namespace expedition::wire {

using nlohmann::ordered_json;

ordered_json to_json(const SearchResponse& response);
ordered_json to_json(const TimelineProfile& profile);
ordered_json selectors_to_json(const std::vector<SalientEntity>& selectors);
ordered_json to_json(const DocumentView& view);
ordered_json to_json(const HealthInfo& info);
ordered_json to_json(const ReplayReport& report);
ordered_json constraints_to_json(const Constraints& constraints);

/// Request plus the per-request parameter overrides (k, alpha, gamma, burst_k).
struct ParsedRequest {
    QueryRequest request;
    Params params;
};

/// POST /api/search body. Throws InvalidArgument on malformed fields.
ParsedRequest parse_search_body(const std::string& body, const Params& defaults);

/// Query-string form used by the GET endpoints: q, model, time=A..B, entity (repeatable),
/// type (repeatable), prev (repeatable or comma separated), k, alpha, gamma, burst_k.
ParsedRequest parse_query_params(const std::multimap<std::string, std::string>& params, const Params& defaults);

}  // namespace expedition::wire
