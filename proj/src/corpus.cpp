#include "expedition/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "expedition/error.hpp"

namespace expedition {

using nlohmann::json;
using nlohmann::ordered_json;

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
    for (const auto& d : docs_) {
        Month m = d.bucket();
        if (!span_) {
            span_ = MonthInterval{m, m};
        } else {
            span_->first = std::min(span_->first, m);
            span_->last = std::max(span_->last, m);
        }
    }
}

namespace {

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw DataError(std::string("missing key '") + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_string()) throw DataError(std::string("key '") + key + "' must be a string");
    return v.get<std::string>();
}

std::size_t require_offset(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw DataError(where + "." + key + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

Month require_month(const json& obj, const char* key, const std::string& where) {
    auto text = require_string(obj, key);
    auto m = Month::parse(text);
    if (!m) throw DataError(where + "." + key + " is not YYYY-MM: '" + text + "'");
    return *m;
}

}  // namespace

void validate_document(const Document& doc) {
    if (doc.doc_id.empty()) throw DataError("empty document id");
    const std::size_t len = doc.text_length();
    for (std::size_t i = 0; i < doc.entity_mentions.size(); ++i) {
        const auto& m = doc.entity_mentions[i];
        const std::string where = "entities[" + std::to_string(i) + "]";
        if (m.entity_id.empty()) throw DataError(where + ": empty entity_id");
        if (m.char_start >= m.char_end) throw DataError(where + ": start must be < end");
        if (m.char_end > len) {
            throw DataError(where + ": end " + std::to_string(m.char_end) + " exceeds text length " +
                            std::to_string(len));
        }
        if (m.in_title != (m.char_end <= doc.title.size())) throw DataError(where + ": in_title inconsistent");
    }
    for (std::size_t i = 0; i < doc.temporal_refs.size(); ++i) {
        const auto& r = doc.temporal_refs[i];
        const std::string where = "times[" + std::to_string(i) + "]";
        if (r.end_month < r.start_month) throw DataError(where + ": start month after end month");
        if (r.char_start >= r.char_end) throw DataError(where + ": char_start must be < char_end");
        if (r.char_end > len) {
            throw DataError(where + ": char_end " + std::to_string(r.char_end) + " exceeds text length " +
                            std::to_string(len));
        }
    }
}

Document parse_document(std::string_view json_line) {
    json obj;
    try {
        obj = json::parse(json_line);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw DataError("record is not a JSON object");

    Document doc;
    doc.doc_id = require_string(obj, "id");
    doc.title = require_string(obj, "title");
    doc.body = require_string(obj, "body");
    auto published = require_string(obj, "published");
    auto date = Date::parse(published);
    if (!date) throw DataError("published is not a valid YYYY-MM-DD date: '" + published + "'");
    doc.published = *date;
    doc.article_type = require_string(obj, "type");

    if (auto it = obj.find("entities"); it != obj.end()) {
        if (!it->is_array()) throw DataError("entities must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& e = (*it)[i];
            const std::string where = "entities[" + std::to_string(i) + "]";
            if (!e.is_object()) throw DataError(where + " must be an object");
            EntityMention m;
            m.entity_id = require_string(e, "entity_id");
            m.surface = require_string(e, "surface");
            m.char_start = require_offset(e, "start", where);
            m.char_end = require_offset(e, "end", where);
            m.in_title = m.char_end <= doc.title.size();
            doc.entity_mentions.push_back(std::move(m));
        }
    }
    if (auto it = obj.find("times"); it != obj.end()) {
        if (!it->is_array()) throw DataError("times must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& t = (*it)[i];
            const std::string where = "times[" + std::to_string(i) + "]";
            if (!t.is_object()) throw DataError(where + " must be an object");
            TemporalRef r;
            r.start_month = require_month(t, "start", where);
            r.end_month = require_month(t, "end", where);
            r.char_start = require_offset(t, "char_start", where);
            r.char_end = require_offset(t, "char_end", where);
            doc.temporal_refs.push_back(r);
        }
    }
    validate_document(doc);
    return doc;
}

std::string serialize_document(const Document& doc) {
    ordered_json obj;
    obj["id"] = doc.doc_id;
    obj["title"] = doc.title;
    obj["body"] = doc.body;
    obj["published"] = doc.published.to_string();
    obj["type"] = doc.article_type;
    obj["entities"] = ordered_json::array();
    for (const auto& m : doc.entity_mentions) {
        ordered_json e;
        e["entity_id"] = m.entity_id;
        e["surface"] = m.surface;
        e["start"] = m.char_start;
        e["end"] = m.char_end;
        obj["entities"].push_back(std::move(e));
    }
    obj["times"] = ordered_json::array();
    for (const auto& r : doc.temporal_refs) {
        ordered_json t;
        t["start"] = r.start_month.to_string();
        t["end"] = r.end_month.to_string();
        t["char_start"] = r.char_start;
        t["char_end"] = r.char_end;
        obj["times"].push_back(std::move(t));
    }
    return obj.dump();
}

std::string serialize_corpus(const std::vector<Document>& docs) {
    std::string out;
    for (const auto& d : docs) {
        out += serialize_document(d);
        out += '\n';
    }
    return out;
}

void write_corpus(const std::filesystem::path& path, const std::vector<Document>& docs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << serialize_corpus(docs);
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

IngestResult ingest_stream(std::istream& in, const IngestOptions& options) {
    IngestReport report;
    std::vector<Document> docs;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ++report.lines_read;
        try {
            Document doc = parse_document(line);
            if (options.declared_span && !options.declared_span->contains(doc.bucket())) {
                throw DataError("published " + doc.published.to_string() + " outside declared span " +
                                options.declared_span->to_string());
            }
            if (!seen.insert(doc.doc_id).second) throw DataError("duplicate id '" + doc.doc_id + "'");
            docs.push_back(std::move(doc));
        } catch (const DataError& e) {
            report.errors.push_back({lineno, e.what()});
        }
    }
    report.accepted = docs.size();
    if (docs.empty()) report.warnings.push_back("corpus contains no valid documents");
    return {Corpus(std::move(docs)), std::move(report)};
}

IngestResult ingest(const std::filesystem::path& path, const IngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read corpus file '" + path.string() + "'");
    return ingest_stream(in, options);
}

}  // namespace expedition
