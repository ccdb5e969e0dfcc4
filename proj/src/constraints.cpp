#include "expedition/constraints.hpp"

#include <algorithm>

namespace expedition {

bool matches(DocNum doc, const Constraints& constraints, const Index& index) {
    if (constraints.time && !constraints.time->contains(index.doc_bucket(doc))) return false;
    if (!constraints.entities.empty()) {
        const auto& ents = index.doc_entities(doc);
        for (const auto& e : constraints.entities) {
            if (!std::binary_search(ents.begin(), ents.end(), e)) return false;
        }
    }
    if (!constraints.article_types.empty() && !constraints.article_types.count(index.doc_type(doc))) return false;
    return true;
}

Constraints clip_to_span(Constraints constraints, MonthInterval span) {
    if (constraints.time) {
        auto& t = *constraints.time;
        if (t.last < span.first || span.last < t.first) return constraints;
        t.first = std::max(t.first, span.first);
        t.last = std::min(t.last, span.last);
    }
    return constraints;
}

}  // namespace expedition
