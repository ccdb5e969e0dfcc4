#include "expedition/index.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

#include "expedition/entities.hpp"
#include "expedition/error.hpp"
#include "expedition/tokenize.hpp"

namespace expedition {

namespace {

constexpr char kMagic[8] = {'E', 'X', 'P', 'D', 'I', 'D', 'X', '\0'};
constexpr std::size_t kHeaderSize = sizeof(kMagic) + 4 + 8 + 8;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) { raw(v); }
    void i32(std::int32_t v) { raw(static_cast<std::uint32_t>(v)); }
    void u64(std::uint64_t v) { raw(v); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.append(s);
    }
    std::string& bytes() { return buf_; }

private:
    template <typename T>
    void raw(T v) {
        for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
    std::uint32_t u32() { return raw<std::uint32_t>(); }
    std::int32_t i32() { return static_cast<std::int32_t>(raw<std::uint32_t>()); }
    std::uint64_t u64() { return raw<std::uint64_t>(); }
    std::string str() {
        auto n = u32();
        return std::string(take(n));
    }
    // Guards element counts against absurd values from corrupt files.
    std::uint32_t count(std::size_t min_element_size) {
        auto n = u32();
        if (static_cast<std::uint64_t>(n) * min_element_size > remaining()) throw DataError("index file: count overruns payload");
        return n;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::string_view take(std::size_t n) {
        if (n > remaining()) throw DataError("index file truncated");
        auto out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }
    template <typename T>
    T raw() {
        auto s = take(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(s[i])) << (8 * i);
        return v;
    }
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

Index Index::build(const Corpus& corpus) {
    if (corpus.empty()) throw InvalidArgument("cannot build an index over an empty corpus");
    Index idx;
    idx.docs_ = corpus.documents();
    const auto n = idx.docs_.size();
    idx.doc_len_.resize(n);
    idx.doc_bucket_.resize(n);

    std::map<std::string, std::uint32_t> tf;
    for (DocNum d = 0; d < n; ++d) {
        const auto& doc = idx.docs_[d];
        tf.clear();
        for (auto& tok : tokenize(doc.text())) ++tf[std::move(tok)];
        std::uint32_t len = 0;
        for (const auto& [term, count] : tf) {
            auto& stats = idx.terms_[term];
            stats.postings.push_back({d, count});
            stats.collection_tf += count;
            len += count;
        }
        idx.doc_len_[d] = len;
        idx.collection_len_ += len;
        idx.doc_bucket_[d] = doc.bucket();
        idx.bucket_docs_[doc.bucket()].push_back(d);
    }
    for (DocNum d = 0; d < n; ++d) {
        for (const auto& m : idx.docs_[d].entity_mentions) {
            auto& list = idx.entity_docs_[m.entity_id];
            if (list.empty() || list.back() != d) list.push_back(d);
        }
    }
    idx.span_ = *corpus.span();
    idx.derive();
    return idx;
}

void Index::derive() {
    by_id_.clear();
    doc_entities_.assign(docs_.size(), {});
    doc_salience_.assign(docs_.size(), {});
    for (DocNum d = 0; d < docs_.size(); ++d) {
        by_id_.emplace(docs_[d].doc_id, d);
        auto& ents = doc_entities_[d];
        for (const auto& m : docs_[d].entity_mentions) ents.push_back(m.entity_id);
        std::sort(ents.begin(), ents.end());
        ents.erase(std::unique(ents.begin(), ents.end()), ents.end());
        doc_salience_[d] = article_salience(docs_[d]);
    }
}

std::optional<DocNum> Index::find(std::string_view doc_id) const {
    auto it = by_id_.find(std::string(doc_id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const TermStats* Index::term(std::string_view t) const {
    auto it = terms_.find(std::string(t));
    return it == terms_.end() ? nullptr : &it->second;
}

std::uint64_t Index::collection_tf(std::string_view t) const {
    const auto* s = term(t);
    return s ? s->collection_tf : 0;
}

std::vector<std::string> Index::terms() const {
    std::vector<std::string> out;
    out.reserve(terms_.size());
    for (const auto& [t, s] : terms_) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

std::span<const DocNum> Index::entity_docs(std::string_view entity_id) const {
    auto it = entity_docs_.find(entity_id);
    if (it == entity_docs_.end()) return {};
    return it->second;
}

std::span<const DocNum> Index::bucket_docs(Month m) const {
    auto it = bucket_docs_.find(m);
    if (it == bucket_docs_.end()) return {};
    return it->second;
}

void Index::save(const std::filesystem::path& path) const {
    Writer w;
    w.u32(static_cast<std::uint32_t>(docs_.size()));
    for (DocNum d = 0; d < docs_.size(); ++d) {
        const auto& doc = docs_[d];
        w.str(doc.doc_id);
        w.str(doc.title);
        w.str(doc.body);
        w.str(doc.article_type);
        w.i32(doc.published.year);
        w.i32(doc.published.month);
        w.i32(doc.published.day);
        w.u32(static_cast<std::uint32_t>(doc.entity_mentions.size()));
        for (const auto& m : doc.entity_mentions) {
            w.str(m.entity_id);
            w.str(m.surface);
            w.u64(m.char_start);
            w.u64(m.char_end);
            w.u8(m.in_title ? 1 : 0);
        }
        w.u32(static_cast<std::uint32_t>(doc.temporal_refs.size()));
        for (const auto& r : doc.temporal_refs) {
            w.i32(r.start_month.index());
            w.i32(r.end_month.index());
            w.u64(r.char_start);
            w.u64(r.char_end);
        }
        w.u32(doc_len_[d]);
        w.i32(doc_bucket_[d].index());
    }
    w.u64(collection_len_);
    w.i32(span_.first.index());
    w.i32(span_.last.index());

    const auto sorted_terms = terms();
    w.u32(static_cast<std::uint32_t>(sorted_terms.size()));
    for (const auto& t : sorted_terms) {
        const auto& stats = terms_.at(t);
        w.str(t);
        w.u64(stats.collection_tf);
        w.u32(static_cast<std::uint32_t>(stats.postings.size()));
        for (const auto& p : stats.postings) {
            w.u32(p.doc);
            w.u32(p.tf);
        }
    }
    w.u32(static_cast<std::uint32_t>(entity_docs_.size()));
    for (const auto& [e, list] : entity_docs_) {
        w.str(e);
        w.u32(static_cast<std::uint32_t>(list.size()));
        for (auto d : list) w.u32(d);
    }
    w.u32(static_cast<std::uint32_t>(bucket_docs_.size()));
    for (const auto& [m, list] : bucket_docs_) {
        w.i32(m.index());
        w.u32(static_cast<std::uint32_t>(list.size()));
        for (auto d : list) w.u32(d);
    }

    Writer header;
    header.bytes().append(kMagic, sizeof(kMagic));
    header.u32(kFormatVersion);
    header.u64(w.bytes().size());
    header.u64(fnv1a(w.bytes()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out.write(header.bytes().data(), static_cast<std::streamsize>(header.bytes().size()));
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

Index Index::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read index file '" + path.string() + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
        throw DataError("'" + path.string() + "' is not an index file");
    }
    Reader header(std::string_view(bytes).substr(sizeof(kMagic), kHeaderSize - sizeof(kMagic)));
    const auto version = header.u32();
    if (version != kFormatVersion) {
        throw VersionError("index format version " + std::to_string(version) + " is not supported (expected " +
                           std::to_string(kFormatVersion) + ")");
    }
    const auto payload_size = header.u64();
    const auto checksum = header.u64();
    std::string_view payload = std::string_view(bytes).substr(kHeaderSize);
    if (payload.size() != payload_size) throw DataError("index file truncated or padded");
    if (fnv1a(payload) != checksum) throw DataError("index file checksum mismatch");

    Reader r(payload);
    Index idx;
    const auto n = r.count(40);
    idx.docs_.resize(n);
    idx.doc_len_.resize(n);
    idx.doc_bucket_.resize(n);
    auto check_doc = [n](std::uint32_t d) {
        if (d >= n) throw DataError("index file: document number out of range");
        return d;
    };
    for (DocNum d = 0; d < n; ++d) {
        auto& doc = idx.docs_[d];
        doc.doc_id = r.str();
        doc.title = r.str();
        doc.body = r.str();
        doc.article_type = r.str();
        doc.published.year = r.i32();
        doc.published.month = r.i32();
        doc.published.day = r.i32();
        const auto nm = r.count(25);
        for (std::uint32_t i = 0; i < nm; ++i) {
            EntityMention m;
            m.entity_id = r.str();
            m.surface = r.str();
            m.char_start = r.u64();
            m.char_end = r.u64();
            m.in_title = r.u8() != 0;
            doc.entity_mentions.push_back(std::move(m));
        }
        const auto nr = r.count(24);
        for (std::uint32_t i = 0; i < nr; ++i) {
            TemporalRef t;
            t.start_month = Month::from_index(r.i32());
            t.end_month = Month::from_index(r.i32());
            t.char_start = r.u64();
            t.char_end = r.u64();
            doc.temporal_refs.push_back(t);
        }
        idx.doc_len_[d] = r.u32();
        idx.doc_bucket_[d] = Month::from_index(r.i32());
    }
    idx.collection_len_ = r.u64();
    idx.span_.first = Month::from_index(r.i32());
    idx.span_.last = Month::from_index(r.i32());

    const auto nt = r.count(16);
    idx.terms_.reserve(nt);
    for (std::uint32_t i = 0; i < nt; ++i) {
        auto t = r.str();
        TermStats stats;
        stats.collection_tf = r.u64();
        const auto np = r.count(8);
        stats.postings.resize(np);
        for (auto& p : stats.postings) {
            p.doc = check_doc(r.u32());
            p.tf = r.u32();
        }
        idx.terms_.emplace(std::move(t), std::move(stats));
    }
    const auto ne = r.count(8);
    for (std::uint32_t i = 0; i < ne; ++i) {
        auto e = r.str();
        auto& list = idx.entity_docs_[e];
        list.resize(r.count(4));
        for (auto& d : list) d = check_doc(r.u32());
    }
    const auto nb = r.count(8);
    for (std::uint32_t i = 0; i < nb; ++i) {
        auto m = Month::from_index(r.i32());
        auto& list = idx.bucket_docs_[m];
        list.resize(r.count(4));
        for (auto& d : list) d = check_doc(r.u32());
    }
    if (r.remaining() != 0) throw DataError("index file has trailing bytes");
    idx.derive();
    return idx;
}

}  // namespace expedition
