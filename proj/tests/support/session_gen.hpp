#pragma once

#include <functional>
#include <random>
#include <string>

#include "expedition/session.hpp"
#include "fixtures.hpp"

namespace fixtures {

// Random walk over the session actions. Saved documents are always taken from
// the current stage's actual result list, as a scholar would.
// `observe` runs after every step.
inline Session random_session(std::mt19937_64& rng, const Index& index, std::size_t steps, const Params& params = {},
                              const std::function<void(const Session&)>& observe = {}) {
    static const char* kQueries[] = {"police", "police new york", "world trade center", "giuliani", "city", "marathon"};
    static const char* kTypes[] = {"news", "opinion"};
    Session s("s-" + std::to_string(rng() % 100000), "2024-01-01T00:00:00Z");
    const auto span = index.span();
    std::vector<std::string> entities;
    for (const auto& [e, docs] : index.entity_map()) entities.push_back(e);

    for (std::size_t i = 0; i < steps; ++i) {
        const std::string ts = "2024-01-01T00:" + std::to_string(10 + i % 50) + ":00Z";
        if (s.stages().empty()) {
            s.apply(action::NewQuery{kQueries[pick(rng, std::size(kQueries))], kAllModels[pick(rng, 5)]}, ts);
            if (observe) observe(s);
            continue;
        }
        switch (pick(rng, 8)) {
            case 0:
                s.apply(action::NewQuery{kQueries[pick(rng, std::size(kQueries))], std::nullopt}, ts);
                break;
            case 1:
                s.apply(action::ChangeModel{kAllModels[pick(rng, 5)]}, ts);
                break;
            case 2: {
                Month a = span.first + static_cast<int>(pick(rng, static_cast<std::size_t>(span.length())));
                s.apply(action::SelectTime{{a, a + static_cast<int>(pick(rng, 36))}}, ts);
                break;
            }
            case 3:
                if (!entities.empty()) s.apply(action::SelectEntity{entities[pick(rng, entities.size())]}, ts);
                break;
            case 4:
                s.apply(action::SelectType{kTypes[pick(rng, 2)]}, ts);
                break;
            case 5: {
                using Kind = action::ClearConstraint::Kind;
                s.apply(action::ClearConstraint{static_cast<Kind>(pick(rng, 4)), {}}, ts);
                break;
            }
            case 6:
                s.revisit(s.stages()[pick(rng, s.stages().size())].id);
                break;
            default: {
                const auto& st = s.stage(*s.current_stage());
                std::vector<std::string> previous;
                // Re-derive what the scholar sees at the current stage.
                auto report = replay(s, index, params);
                for (const auto& r : report.stages) {
                    if (r.stage == st.id) previous = r.results;
                }
                if (!previous.empty()) {
                    const auto& id = previous[pick(rng, previous.size())];
                    s.save_article(id, index.document(*index.find(id)).title);
                }
                break;
            }
        }
        if (observe) observe(s);
    }
    return s;
}

}  // namespace fixtures
