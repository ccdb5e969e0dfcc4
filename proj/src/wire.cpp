#include "expedition/wire.hpp"

#include <charconv>
#include <cmath>

#include "expedition/error.hpp"

namespace expedition::wire {

using nlohmann::json;

namespace {

ordered_json entity_list(const std::vector<SalientEntity>& list, bool with_frequency) {
    auto out = ordered_json::array();
    for (const auto& e : list) {
        ordered_json j;
        j["entity_id"] = e.entity_id;
        if (with_frequency) {
            j["doc_frequency"] = e.doc_frequency;
        } else {
            j["salience"] = e.salience_score;
        }
        out.push_back(std::move(j));
    }
    return out;
}

RetrievalModel model_from(const std::string& name) {
    auto m = parse_model(name);
    if (!m) throw InvalidArgument("unknown retrieval model '" + name + "'");
    return *m;
}

MonthInterval interval_from(const std::string& text) {
    auto iv = MonthInterval::parse(text);
    if (!iv) throw InvalidArgument("time must be YYYY-MM..YYYY-MM, got '" + text + "'");
    return *iv;
}

std::size_t count_from(const std::string& text, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
        throw InvalidArgument(std::string(what) + " must be a positive integer");
    }
    return v;
}

double real_from(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(what) + " must be a number");
    }
}

void check_params(const Params& p) {
    if (p.alpha < 0.0 || p.alpha > 1.0) throw InvalidArgument("alpha must lie in [0, 1]");
    if (p.gamma < 0.0) throw InvalidArgument("gamma must be >= 0");
}

}  // namespace

ordered_json constraints_to_json(const Constraints& c) {
    ordered_json out;
    if (c.time) {
        out["time"] = ordered_json{{"start", c.time->first.to_string()}, {"end", c.time->last.to_string()}};
    } else {
        out["time"] = nullptr;
    }
    out["entities"] = ordered_json::array();
    for (const auto& e : c.entities) out["entities"].push_back(e);
    out["types"] = ordered_json::array();
    for (const auto& t : c.article_types) out["types"].push_back(t);
    return out;
}

ordered_json to_json(const SearchResponse& response) {
    ordered_json out;
    out["results"] = ordered_json::array();
    for (const auto& r : response.results) {
        ordered_json j;
        j["rank"] = r.rank;
        j["doc_id"] = r.doc_id;
        j["headline"] = r.headline;
        j["snippet"] = r.snippet;
        j["published"] = r.published.to_string();
        j["article_type"] = r.article_type;
        j["score"] = r.score;
        j["pinned"] = r.pinned;
        j["salient_entities"] = entity_list(r.salient_entities, false);
        out["results"].push_back(std::move(j));
    }
    out["total_matching"] = response.total_matching;
    out["no_matches"] = response.no_matches;
    out["warnings"] = response.warnings;
    return out;
}

ordered_json to_json(const TimelineProfile& profile) {
    ordered_json out;
    out["span"] = ordered_json{{"start", profile.span.first.to_string()}, {"end", profile.span.last.to_string()}};
    out["no_data"] = profile.no_data;
    out["buckets"] = ordered_json::array();
    for (const auto& b : profile.buckets) {
        out["buckets"].push_back(ordered_json{{"month", b.month.to_string()},
                                              {"p_pub", b.p_pub},
                                              {"p_ref", b.p_ref},
                                              {"p_combined", b.p_combined}});
    }
    out["bursts"] = ordered_json::array();
    for (const auto& b : profile.bursts) {
        ordered_json j;
        j["start"] = b.start.to_string();
        j["end"] = b.end.to_string();
        j["peak"] = b.peak.to_string();
        j["labels"] = b.labels;
        j["reference_driven"] = b.reference_driven;
        out["bursts"].push_back(std::move(j));
    }
    out["top_placements"] = ordered_json::array();
    for (const auto& p : profile.top_placements) {
        out["top_placements"].push_back(
            ordered_json{{"doc_id", p.doc_id}, {"rank", p.rank}, {"month", p.month.to_string()}});
    }
    return out;
}

ordered_json selectors_to_json(const std::vector<SalientEntity>& selectors) { return entity_list(selectors, true); }

ordered_json to_json(const DocumentView& view) {
    const auto& d = *view.doc;
    ordered_json out;
    out["doc_id"] = d.doc_id;
    out["headline"] = d.title;
    out["body"] = d.body;
    out["published"] = d.published.to_string();
    out["article_type"] = d.article_type;
    out["entities"] = ordered_json::array();
    for (const auto& m : d.entity_mentions) {
        out["entities"].push_back(ordered_json{{"entity_id", m.entity_id},
                                               {"surface", m.surface},
                                               {"start", m.char_start},
                                               {"end", m.char_end},
                                               {"in_title", m.in_title}});
    }
    out["times"] = ordered_json::array();
    for (const auto& r : d.temporal_refs) {
        out["times"].push_back(ordered_json{{"start", r.start_month.to_string()},
                                            {"end", r.end_month.to_string()},
                                            {"char_start", r.char_start},
                                            {"char_end", r.char_end}});
    }
    out["salient_entities"] = entity_list(view.salient_entities, false);
    return out;
}

ordered_json to_json(const HealthInfo& info) {
    ordered_json out;
    out["status"] = "ok";
    out["doc_count"] = info.doc_count;
    out["span"] = ordered_json{{"start", info.span.first.to_string()}, {"end", info.span.last.to_string()}};
    out["format_version"] = info.format_version;
    out["vocabulary"] = info.vocabulary;
    return out;
}

ordered_json to_json(const ReplayReport& report) {
    ordered_json out;
    out["stages"] = ordered_json::array();
    for (const auto& s : report.stages) {
        out["stages"].push_back(ordered_json{{"stage", s.stage},
                                             {"status", s.status == MatchStatus::Ok ? "ok" : "no_matches"},
                                             {"result_count", s.results.size()},
                                             {"results", s.results}});
    }
    out["saved"] = ordered_json::array();
    for (const auto& c : report.saved) {
        out["saved"].push_back(ordered_json{
            {"doc_id", c.doc_id}, {"stage", c.stage}, {"in_index", c.in_index}, {"found", c.found}});
    }
    out["verified"] = report.verified();
    out["all_verified"] = report.all_verified();
    return out;
}

ParsedRequest parse_search_body(const std::string& body, const Params& defaults) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error&) {
        throw InvalidArgument("request body is not valid JSON");
    }
    if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");

    ParsedRequest out{{}, defaults};
    auto& req = out.request;
    req.k = defaults.k;
    auto str = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) throw InvalidArgument(std::string(key) + " must be a string");
        return it->get<std::string>();
    };
    auto num = [&](const char* key) -> std::optional<double> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_number()) throw InvalidArgument(std::string(key) + " must be a number");
        return it->get<double>();
    };
    auto strings = [&](const json& arr, const char* what) {
        if (!arr.is_array()) throw InvalidArgument(std::string(what) + " must be an array of strings");
        std::vector<std::string> v;
        for (const auto& x : arr) {
            if (!x.is_string()) throw InvalidArgument(std::string(what) + " must be an array of strings");
            v.push_back(x.get<std::string>());
        }
        return v;
    };

    req.q = str("q").value_or("");
    if (auto m = str("model")) req.model = model_from(*m);
    if (auto it = j.find("k"); it != j.end() && !it->is_null()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) throw InvalidArgument("k must be a positive integer");
        req.k = it->get<std::size_t>();
    }
    if (auto v = num("alpha")) out.params.alpha = *v;
    if (auto v = num("gamma")) out.params.gamma = *v;
    if (auto v = num("burst_k")) out.params.burst_k = *v;
    if (auto it = j.find("prev"); it != j.end() && !it->is_null()) req.prev = strings(*it, "prev");
    if (auto it = j.find("constraints"); it != j.end() && !it->is_null()) {
        const auto& c = *it;
        if (!c.is_object()) throw InvalidArgument("constraints must be an object");
        if (auto t = c.find("time"); t != c.end() && !t->is_null()) {
            if (t->is_string()) {
                req.constraints.time = interval_from(t->get<std::string>());
            } else if (t->is_object() && t->contains("start") && t->contains("end") && (*t)["start"].is_string() &&
                       (*t)["end"].is_string()) {
                req.constraints.time =
                    interval_from((*t)["start"].get<std::string>() + ".." + (*t)["end"].get<std::string>());
            } else {
                throw InvalidArgument("constraints.time must be {start, end} or \"A..B\"");
            }
        }
        if (auto e = c.find("entities"); e != c.end() && !e->is_null()) {
            for (auto& s : strings(*e, "constraints.entities")) req.constraints.entities.insert(std::move(s));
        }
        if (auto t = c.find("types"); t != c.end() && !t->is_null()) {
            for (auto& s : strings(*t, "constraints.types")) req.constraints.article_types.insert(std::move(s));
        }
    }
    check_params(out.params);
    return out;
}

ParsedRequest parse_query_params(const std::multimap<std::string, std::string>& params, const Params& defaults) {
    ParsedRequest out{{}, defaults};
    auto& req = out.request;
    req.k = defaults.k;
    for (const auto& [key, value] : params) {
        if (key == "q") {
            req.q = value;
        } else if (key == "model") {
            req.model = model_from(value);
        } else if (key == "time") {
            if (!value.empty()) req.constraints.time = interval_from(value);
        } else if (key == "entity") {
            req.constraints.entities.insert(value);
        } else if (key == "type") {
            req.constraints.article_types.insert(value);
        } else if (key == "prev") {
            std::size_t start = 0;
            while (start <= value.size()) {
                auto comma = value.find(',', start);
                auto piece = value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (!piece.empty()) req.prev.push_back(piece);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        } else if (key == "k") {
            req.k = count_from(value, "k");
        } else if (key == "alpha") {
            out.params.alpha = real_from(value, "alpha");
        } else if (key == "gamma") {
            out.params.gamma = real_from(value, "gamma");
        } else if (key == "burst_k") {
            out.params.burst_k = real_from(value, "burst_k");
        }
    }
    check_params(out.params);
    return out;
}

}  // namespace expedition::wire
