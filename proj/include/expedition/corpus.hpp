#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expedition/month.hpp"

namespace expedition {

/// An entity occurrence. Offsets address the concatenated text
/// `title + "\n" + body` (see Document::text()).
struct EntityMention {
    std::string entity_id;
    std::string surface;
    std::size_t char_start = 0;
    std::size_t char_end = 0;
    bool in_title = false;

    bool operator==(const EntityMention&) const = default;
};

/// A normalized time expression found in the text, spanning whole months.
struct TemporalRef {
    Month start_month;
    Month end_month;
    std::size_t char_start = 0;
    std::size_t char_end = 0;

    bool operator==(const TemporalRef&) const = default;
};

struct Document {
    std::string doc_id;
    std::string title;
    std::string body;
    Date published;
    std::string article_type;
    std::vector<EntityMention> entity_mentions;
    std::vector<TemporalRef> temporal_refs;

    /// Title and body joined by a single newline; the offset space of all annotations.
    std::string text() const { return title + "\n" + body; }
    std::size_t text_length() const { return title.size() + 1 + body.size(); }
    Month bucket() const { return published.bucket(); }

    bool operator==(const Document&) const = default;
};

struct IngestIssue {
    std::size_t line = 0;  // 1-based line number in the corpus file
    std::string message;
};

struct IngestReport {
    std::size_t lines_read = 0;
    std::size_t accepted = 0;
    std::vector<IngestIssue> errors;
    std::vector<std::string> warnings;
};

/// Immutable set of validated documents.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<Document> docs);

    const std::vector<Document>& documents() const { return docs_; }
    std::size_t size() const { return docs_.size(); }
    bool empty() const { return docs_.empty(); }
    /// [min published month, max published month]; nullopt for an empty corpus.
    const std::optional<MonthInterval>& span() const { return span_; }

private:
    std::vector<Document> docs_;
    std::optional<MonthInterval> span_;
};

struct IngestOptions {
    /// When set, documents published outside this interval are rejected.
    std::optional<MonthInterval> declared_span;
};

struct IngestResult {
    Corpus corpus;
    IngestReport report;
};

/// Reads a line-delimited JSON corpus file. Throws DataError when the file
/// cannot be read; bad records are skipped and listed in the report.
IngestResult ingest(const std::filesystem::path& path, const IngestOptions& options = {});
IngestResult ingest_stream(std::istream& in, const IngestOptions& options = {});

/// Parses and validates a single record. Throws DataError describing the first violation.
Document parse_document(std::string_view json_line);
/// Checks the offset/interval invariants of an in-memory document.
void validate_document(const Document& doc);

/// One JSON object, keys in interchange order, no trailing newline.
std::string serialize_document(const Document& doc);
void write_corpus(const std::filesystem::path& path, const std::vector<Document>& docs);
std::string serialize_corpus(const std::vector<Document>& docs);

/// Surface form (matched case-insensitively, whole words) -> entity id.
using Gazetteer = std::map<std::string, std::string>;

/// Adds dictionary entity mentions and year / "Month YYYY" temporal references.
/// Existing annotations are kept; identical annotations are never duplicated.
Document trivial_annotate(Document doc, const Gazetteer& gazetteer);

struct BurstSpec {
    MonthInterval interval;
    std::vector<std::string> terms;
    double intensity = 0.0;
};

struct SyntheticSpec {
    std::uint64_t seed = 1;
    std::size_t n_docs = 1000;
    MonthInterval span{Month(1987, 1), Month(2007, 6)};
    std::size_t n_entities = 50;
    std::vector<BurstSpec> bursts;
    /// Share of the collection given to each burst entry's topic documents.
    double topic_share = 0.1;
};

/// Deterministic synthetic archive. Publication months are spread evenly
/// across the span; each burst entry owns topic_share * n_docs documents that
/// carry its terms, `intensity` of them published inside its interval.
std::vector<Document> generate_synthetic(const SyntheticSpec& spec);

}  // namespace expedition
