#pragma once

#include <optional>
#include <set>
#include <string>

#include "expedition/index.hpp"
#include "expedition/month.hpp"

namespace expedition {

/// Selector state: publication-month window, required entities (all of them),
/// allowed article types (any of them). Empty means unconstrained.
struct Constraints {
    std::optional<MonthInterval> time;
    std::set<std::string> entities;
    std::set<std::string> article_types;

    bool empty() const { return !time && entities.empty() && article_types.empty(); }
    bool operator==(const Constraints&) const = default;
};

bool matches(DocNum doc, const Constraints& constraints, const Index& index);

/// Intersects the time window with the index span. A window lying entirely
/// outside the span stays set but can match nothing.
Constraints clip_to_span(Constraints constraints, MonthInterval span);

}  // namespace expedition
