#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "expedition/constraints.hpp"
#include "expedition/error.hpp"
#include "expedition/index.hpp"
#include "expedition/params.hpp"
#include "expedition/ranking.hpp"

namespace expedition {

using StageId = std::uint64_t;

struct TrailStage {
    StageId id = 0;
    std::optional<StageId> parent;
    std::string query;
    RetrievalModel model = RetrievalModel::Textual;
    Constraints constraints;
    std::string created_at;

    bool operator==(const TrailStage&) const = default;
};

struct CorpusEntry {
    std::string doc_id;
    std::string headline;
    StageId saved_from_stage = 0;
    std::string query;

    bool operator==(const CorpusEntry&) const = default;
};

namespace action {
struct NewQuery {
    std::string query;
    std::optional<RetrievalModel> model;  // unchanged when empty
};
struct ChangeModel {
    RetrievalModel model;
};
struct SelectTime {
    MonthInterval interval;
};
struct SelectEntity {
    std::string entity_id;
};
struct SelectType {
    std::string article_type;
};
struct ClearConstraint {
    enum class Kind { Time, Entity, Type, All };
    Kind kind = Kind::All;
    std::string value;  // entity id or type; empty clears every value of that kind
};
}  // namespace action

using Action = std::variant<action::NewQuery, action::ChangeModel, action::SelectTime, action::SelectEntity,
                            action::SelectType, action::ClearConstraint>;

/// Export document that does not conform to the schema; `path` is a JSON pointer.
class SchemaError : public DataError {
public:
    SchemaError(std::string path, const std::string& message)
        : DataError(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Search trail plus the scholar's corpus. Stages are append-only; revisiting a
/// stage moves the cursor, and the next action branches from it.
class Session {
public:
    static constexpr int kFormatVersion = 1;

    Session(std::string session_id, std::string created_at);

    /// Appends a stage derived from the current one. Returns false (and appends
    /// nothing) when the action leaves the state unchanged. Throws InvalidArgument
    /// for a non-query action on an empty trail or an empty query.
    bool apply(const Action& action, const std::string& timestamp);

    /// Throws InvalidArgument for an unknown stage.
    void revisit(StageId stage);

    /// Records a saved article with the current stage as provenance. Returns false for
    /// an already saved document. Throws InvalidArgument when the trail is empty.
    bool save_article(const std::string& doc_id, const std::string& headline);

    const std::string& session_id() const { return session_id_; }
    const std::string& created_at() const { return created_at_; }
    const std::vector<TrailStage>& stages() const { return stages_; }
    const std::vector<CorpusEntry>& corpus() const { return corpus_; }
    std::optional<StageId> current_stage() const { return current_; }
    const TrailStage& stage(StageId id) const;

    /// Two-space indented JSON with fixed key order and a trailing newline.
    std::string export_json() const;
    /// Validates and loads an export document; the cursor is put on the last stage.
    static Session import_json(std::string_view text);

private:
    std::string session_id_;
    std::string created_at_;
    std::vector<TrailStage> stages_;
    std::vector<CorpusEntry> corpus_;
    std::optional<StageId> current_;
};

struct StageReplay {
    StageId stage = 0;
    MatchStatus status = MatchStatus::Ok;
    std::vector<std::string> results;
};

struct SavedCheck {
    std::string doc_id;
    StageId stage = 0;
    bool in_index = false;
    bool found = false;  // present in its stage's result list
};

struct ReplayReport {
    std::vector<StageReplay> stages;
    std::vector<SavedCheck> saved;

    std::size_t verified() const;
    bool all_verified() const { return verified() == saved.size(); }
};

/// Re-runs every stage in order. A stage with a parent is executed as a refinement
/// of its parent's results, mirroring what the scholar saw.
ReplayReport replay(const Session& session, const Index& index, const Params& params = {});
ReplayReport replay(std::string_view export_json, const Index& index, const Params& params = {});

}  // namespace expedition
