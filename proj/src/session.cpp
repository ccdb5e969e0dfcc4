#include "expedition/session.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "expedition/refine.hpp"
#include "expedition/tokenize.hpp"
#include "expedition/wire.hpp"

namespace expedition {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct StageState {
    std::string query;
    RetrievalModel model;
    Constraints constraints;

    bool operator==(const StageState&) const = default;
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Small helpers that report violations as JSON pointers.
const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "/" + key, "missing");
    return *it;
}

std::string string_field(const json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::uint64_t id_field(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) throw SchemaError(path, "expected a positive integer");
    return v.get<std::uint64_t>();
}

const json& array_field(const json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_array()) throw SchemaError(path + "/" + key, "expected an array");
    return v;
}

Month month_field(const json& obj, const std::string& path, const char* key) {
    auto text = string_field(obj, path, key);
    auto m = Month::parse(text);
    if (!m) throw SchemaError(path + "/" + key, "expected YYYY-MM, got '" + text + "'");
    return *m;
}

Constraints constraints_from_json(const json& v, const std::string& path) {
    if (!v.is_object()) throw SchemaError(path, "expected an object");
    Constraints c;
    const auto& time = field(v, path, "time");
    if (!time.is_null()) {
        const auto tp = path + "/time";
        MonthInterval iv{month_field(time, tp, "start"), month_field(time, tp, "end")};
        if (iv.last < iv.first) throw SchemaError(tp, "start after end");
        c.time = iv;
    }
    const auto& ents = array_field(v, path, "entities");
    for (std::size_t i = 0; i < ents.size(); ++i) {
        if (!ents[i].is_string()) throw SchemaError(path + "/entities/" + std::to_string(i), "expected a string");
        c.entities.insert(ents[i].get<std::string>());
    }
    const auto& types = array_field(v, path, "types");
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (!types[i].is_string()) throw SchemaError(path + "/types/" + std::to_string(i), "expected a string");
        c.article_types.insert(types[i].get<std::string>());
    }
    return c;
}

}  // namespace

Session::Session(std::string session_id, std::string created_at)
    : session_id_(std::move(session_id)), created_at_(std::move(created_at)) {}

const TrailStage& Session::stage(StageId id) const {
    auto it = std::lower_bound(stages_.begin(), stages_.end(), id,
                               [](const TrailStage& s, StageId v) { return s.id < v; });
    if (it == stages_.end() || it->id != id) throw InvalidArgument("unknown stage " + std::to_string(id));
    return *it;
}

bool Session::apply(const Action& act, const std::string& timestamp) {
    const TrailStage* cur = current_ ? &stage(*current_) : nullptr;
    if (!cur && !std::holds_alternative<action::NewQuery>(act)) {
        throw InvalidArgument("the trail is empty; start with a query");
    }
    StageState next = cur ? StageState{cur->query, cur->model, cur->constraints}
                          : StageState{{}, RetrievalModel::Textual, {}};
    std::visit(overloaded{
                   [&](const action::NewQuery& a) {
                       if (tokenize(a.query).empty()) throw InvalidArgument("empty query");
                       next.query = a.query;
                       if (a.model) next.model = *a.model;
                   },
                   [&](const action::ChangeModel& a) { next.model = a.model; },
                   [&](const action::SelectTime& a) { next.constraints.time = a.interval; },
                   [&](const action::SelectEntity& a) { next.constraints.entities.insert(a.entity_id); },
                   [&](const action::SelectType& a) { next.constraints.article_types.insert(a.article_type); },
                   [&](const action::ClearConstraint& a) {
                       using Kind = action::ClearConstraint::Kind;
                       auto& c = next.constraints;
                       switch (a.kind) {
                           case Kind::Time: c.time.reset(); break;
                           case Kind::Entity:
                               if (a.value.empty()) c.entities.clear(); else c.entities.erase(a.value);
                               break;
                           case Kind::Type:
                               if (a.value.empty()) c.article_types.clear(); else c.article_types.erase(a.value);
                               break;
                           case Kind::All: c = Constraints{}; break;
                       }
                   },
               },
               act);

    if (cur && next == StageState{cur->query, cur->model, cur->constraints}) return false;

    TrailStage s;
    s.id = stages_.empty() ? 1 : stages_.back().id + 1;
    s.parent = current_;
    s.query = std::move(next.query);
    s.model = next.model;
    s.constraints = std::move(next.constraints);
    s.created_at = timestamp;
    stages_.push_back(std::move(s));
    current_ = stages_.back().id;
    return true;
}

void Session::revisit(StageId id) {
    stage(id);
    current_ = id;
}

bool Session::save_article(const std::string& doc_id, const std::string& headline) {
    if (!current_) throw InvalidArgument("cannot save an article before the first query");
    auto same = [&](const CorpusEntry& e) { return e.doc_id == doc_id; };
    if (std::any_of(corpus_.begin(), corpus_.end(), same)) return false;
    corpus_.push_back({doc_id, headline, *current_, stage(*current_).query});
    return true;
}

std::string Session::export_json() const {
    ordered_json out;
    out["format_version"] = kFormatVersion;
    out["session_id"] = session_id_;
    out["created_at"] = created_at_;
    out["stages"] = ordered_json::array();
    for (const auto& s : stages_) {
        ordered_json j;
        j["id"] = s.id;
        j["parent"] = s.parent ? ordered_json(*s.parent) : ordered_json(nullptr);
        j["query"] = s.query;
        j["model"] = std::string(to_string(s.model));
        j["constraints"] = wire::constraints_to_json(s.constraints);
        j["ts"] = s.created_at;
        out["stages"].push_back(std::move(j));
    }
    out["corpus"] = ordered_json::array();
    for (const auto& e : corpus_) {
        ordered_json j;
        j["doc_id"] = e.doc_id;
        j["headline"] = e.headline;
        j["stage"] = e.saved_from_stage;
        j["query"] = e.query;
        out["corpus"].push_back(std::move(j));
    }
    return out.dump(2) + "\n";
}

Session Session::import_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    const auto& version = field(doc, "", "format_version");
    if (!version.is_number_integer() || version.get<long long>() != kFormatVersion) {
        throw SchemaError("/format_version", "unsupported format version");
    }
    Session s(string_field(doc, "", "session_id"), string_field(doc, "", "created_at"));

    const auto& stages = array_field(doc, "", "stages");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string path = "/stages/" + std::to_string(i);
        const auto& js = stages[i];
        TrailStage st;
        st.id = id_field(field(js, path, "id"), path + "/id");
        if (!s.stages_.empty() && st.id <= s.stages_.back().id) throw SchemaError(path + "/id", "stage ids must increase");
        const auto& parent = field(js, path, "parent");
        if (!parent.is_null()) {
            st.parent = id_field(parent, path + "/parent");
            if (*st.parent >= st.id) throw SchemaError(path + "/parent", "parent must precede the stage");
            auto known = std::any_of(s.stages_.begin(), s.stages_.end(), [&](const TrailStage& p) { return p.id == *st.parent; });
            if (!known) throw SchemaError(path + "/parent", "unknown parent stage");
        } else if (i != 0) {
            throw SchemaError(path + "/parent", "only the first stage may lack a parent");
        }
        if (i == 0 && st.parent) throw SchemaError(path + "/parent", "the first stage cannot have a parent");
        st.query = string_field(js, path, "query");
        if (tokenize(st.query).empty()) throw SchemaError(path + "/query", "empty query");
        auto model_name = string_field(js, path, "model");
        auto model = parse_model(model_name);
        if (!model) throw SchemaError(path + "/model", "unknown retrieval model '" + model_name + "'");
        st.model = *model;
        st.constraints = constraints_from_json(field(js, path, "constraints"), path + "/constraints");
        st.created_at = string_field(js, path, "ts");
        s.stages_.push_back(std::move(st));
    }

    const auto& corpus = array_field(doc, "", "corpus");
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const std::string path = "/corpus/" + std::to_string(i);
        const auto& je = corpus[i];
        CorpusEntry e;
        e.doc_id = string_field(je, path, "doc_id");
        e.headline = string_field(je, path, "headline");
        e.saved_from_stage = id_field(field(je, path, "stage"), path + "/stage");
        e.query = string_field(je, path, "query");
        auto known = std::any_of(s.stages_.begin(), s.stages_.end(), [&](const TrailStage& p) { return p.id == e.saved_from_stage; });
        if (!known) throw SchemaError(path + "/stage", "unknown stage");
        auto dup = std::any_of(s.corpus_.begin(), s.corpus_.end(), [&](const CorpusEntry& x) { return x.doc_id == e.doc_id; });
        if (dup) throw SchemaError(path + "/doc_id", "duplicate saved document");
        s.corpus_.push_back(std::move(e));
    }
    if (!s.stages_.empty()) s.current_ = s.stages_.back().id;
    return s;
}

std::size_t ReplayReport::verified() const {
    return static_cast<std::size_t>(std::count_if(saved.begin(), saved.end(), [](const SavedCheck& c) { return c.found; }));
}

ReplayReport replay(const Session& session, const Index& index, const Params& params) {
    ReplayReport report;
    std::map<StageId, std::vector<std::string>> results;
    for (const auto& st : session.stages()) {
        QueryRequest req;
        req.q = st.query;
        req.model = st.model;
        req.constraints = st.constraints;
        req.k = params.k;
        std::vector<std::string> previous;
        if (st.parent) previous = results.at(*st.parent);
        auto refined = refine(previous, req, index, params);
        StageReplay r{st.id, refined.status, {}};
        for (const auto& d : refined.results) r.results.push_back(d.doc_id);
        results[st.id] = r.results;
        report.stages.push_back(std::move(r));
    }
    for (const auto& e : session.corpus()) {
        const auto& list = results.at(e.saved_from_stage);
        report.saved.push_back({e.doc_id, e.saved_from_stage, index.find(e.doc_id).has_value(),
                                std::find(list.begin(), list.end(), e.doc_id) != list.end()});
    }
    return report;
}

ReplayReport replay(std::string_view export_json, const Index& index, const Params& params) {
    return replay(Session::import_json(export_json), index, params);
}

}  // namespace expedition
