#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "expedition/corpus.hpp"
#include "expedition/month.hpp"

namespace expedition {

/// Dense document number, position of the document in corpus order.
using DocNum = std::uint32_t;

struct Posting {
    DocNum doc = 0;
    std::uint32_t tf = 0;

    bool operator==(const Posting&) const = default;
};

struct TermStats {
    std::vector<Posting> postings;  // ascending by doc
    std::uint64_t collection_tf = 0;
};

struct SalientEntity {
    std::string entity_id;
    double salience_score = 0.0;
    std::uint32_t doc_frequency = 0;  // only filled for query-time selectors

    bool operator==(const SalientEntity&) const = default;
};

/// Immutable index over a corpus: term postings, per-document length/bucket/type,
/// entity and month lookups, and collection statistics. Thread-safe for readers.
class Index {
public:
    static constexpr std::uint32_t kFormatVersion = 1;

    /// Throws InvalidArgument on an empty corpus.
    static Index build(const Corpus& corpus);

    void save(const std::filesystem::path& path) const;
    /// Throws VersionError on a format mismatch and DataError on any corruption.
    static Index load(const std::filesystem::path& path);

    std::size_t size() const { return docs_.size(); }
    const Document& document(DocNum d) const { return docs_[d]; }
    const std::vector<Document>& documents() const { return docs_; }
    std::optional<DocNum> find(std::string_view doc_id) const;
    const std::string& doc_id(DocNum d) const { return docs_[d].doc_id; }

    std::uint32_t doc_len(DocNum d) const { return doc_len_[d]; }
    Month doc_bucket(DocNum d) const { return doc_bucket_[d]; }
    const std::string& doc_type(DocNum d) const { return docs_[d].article_type; }
    /// Distinct entity ids mentioned in the document, sorted.
    const std::vector<std::string>& doc_entities(DocNum d) const { return doc_entities_[d]; }
    /// Salient entities by the title/position/frequency heuristic, computed once at build/load.
    const std::vector<SalientEntity>& doc_salience(DocNum d) const { return doc_salience_[d]; }

    /// nullptr when the term does not occur in the collection.
    const TermStats* term(std::string_view t) const;
    std::uint64_t collection_tf(std::string_view t) const;
    std::uint64_t collection_len() const { return collection_len_; }
    std::size_t vocabulary_size() const { return terms_.size(); }
    /// Terms in lexicographic order.
    std::vector<std::string> terms() const;

    /// Sorted doc numbers mentioning the entity (empty if unknown).
    std::span<const DocNum> entity_docs(std::string_view entity_id) const;
    std::span<const DocNum> bucket_docs(Month m) const;
    const std::map<std::string, std::vector<DocNum>, std::less<>>& entity_map() const { return entity_docs_; }
    const std::map<Month, std::vector<DocNum>>& bucket_map() const { return bucket_docs_; }

    MonthInterval span() const { return span_; }

private:
    Index() = default;
    void derive();  // recomputes everything that is a pure function of docs_

    std::vector<Document> docs_;
    std::unordered_map<std::string, DocNum> by_id_;
    std::vector<std::uint32_t> doc_len_;
    std::vector<Month> doc_bucket_;
    std::vector<std::vector<std::string>> doc_entities_;
    std::vector<std::vector<SalientEntity>> doc_salience_;
    std::unordered_map<std::string, TermStats> terms_;
    std::map<std::string, std::vector<DocNum>, std::less<>> entity_docs_;
    std::map<Month, std::vector<DocNum>> bucket_docs_;
    std::uint64_t collection_len_ = 0;
    MonthInterval span_;
};

}  // namespace expedition
