#include <algorithm>
#include <array>
#include <regex>

#include "expedition/corpus.hpp"
#include "expedition/tokenize.hpp"

namespace expedition {

namespace {

constexpr std::array<const char*, 12> kMonthNames = {"January", "February", "March",     "April",
                                                     "May",     "June",     "July",      "August",
                                                     "September", "October", "November", "December"};

bool at_word_boundary(const std::string& text, std::size_t begin, std::size_t end) {
    bool left = begin == 0 || !is_token_char(static_cast<unsigned char>(text[begin - 1]));
    bool right = end >= text.size() || !is_token_char(static_cast<unsigned char>(text[end]));
    return left && right;
}

void add_mention(Document& doc, EntityMention m) {
    auto same = [&](const EntityMention& x) {
        return x.entity_id == m.entity_id && x.char_start == m.char_start && x.char_end == m.char_end;
    };
    if (std::none_of(doc.entity_mentions.begin(), doc.entity_mentions.end(), same)) {
        doc.entity_mentions.push_back(std::move(m));
    }
}

void add_ref(Document& doc, const TemporalRef& r) {
    if (std::find(doc.temporal_refs.begin(), doc.temporal_refs.end(), r) == doc.temporal_refs.end()) {
        doc.temporal_refs.push_back(r);
    }
}

}  // namespace

Document trivial_annotate(Document doc, const Gazetteer& gazetteer) {
    const std::string text = doc.text();
    const std::string lowered = to_lower_ascii(text);

    for (const auto& [surface, entity_id] : gazetteer) {
        const std::string needle = to_lower_ascii(surface);
        if (needle.empty()) continue;
        for (auto pos = lowered.find(needle); pos != std::string::npos; pos = lowered.find(needle, pos + 1)) {
            const std::size_t end = pos + needle.size();
            if (!at_word_boundary(lowered, pos, end)) continue;
            add_mention(doc, {entity_id, text.substr(pos, needle.size()), pos, end, end <= doc.title.size()});
        }
    }

    // Temporal expressions are only looked for in the body.
    const std::size_t body_offset = doc.title.size() + 1;
    static const std::regex month_year(
        R"(\b(January|February|March|April|May|June|July|August|September|October|November|December) (\d{4})\b)");
    static const std::regex bare_year(R"(\b(\d{4})\b)");

    std::vector<std::pair<std::size_t, std::size_t>> claimed;
    for (std::sregex_iterator it(doc.body.begin(), doc.body.end(), month_year), last; it != last; ++it) {
        const auto& match = *it;
        const int year = std::stoi(match[2].str());
        if (year < 1850 || year > 2100) continue;
        const auto name = match[1].str();
        const int month = static_cast<int>(
            std::find_if(kMonthNames.begin(), kMonthNames.end(), [&](const char* n) { return name == n; }) -
            kMonthNames.begin()) + 1;
        const std::size_t begin = static_cast<std::size_t>(match.position(0));
        const std::size_t end = begin + static_cast<std::size_t>(match.length(0));
        claimed.emplace_back(begin, end);
        add_ref(doc, {Month(year, month), Month(year, month), body_offset + begin, body_offset + end});
    }
    for (std::sregex_iterator it(doc.body.begin(), doc.body.end(), bare_year), last; it != last; ++it) {
        const auto& match = *it;
        const std::size_t begin = static_cast<std::size_t>(match.position(0));
        const std::size_t end = begin + 4;
        const bool inside_month_expr = std::any_of(claimed.begin(), claimed.end(), [&](const auto& c) {
            return begin >= c.first && end <= c.second;
        });
        if (inside_month_expr) continue;
        const int year = std::stoi(match[1].str());
        if (year < 1850 || year > 2100) continue;
        add_ref(doc, {Month(year, 1), Month(year, 12), body_offset + begin, body_offset + end});
    }

    std::stable_sort(doc.entity_mentions.begin(), doc.entity_mentions.end(),
                     [](const auto& a, const auto& b) { return a.char_start < b.char_start; });
    std::stable_sort(doc.temporal_refs.begin(), doc.temporal_refs.end(),
                     [](const auto& a, const auto& b) { return a.char_start < b.char_start; });
    return doc;
}

}  // namespace expedition
