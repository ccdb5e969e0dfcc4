#include "expedition/entities.hpp"

#include <algorithm>
#include <map>

#include "expedition/ranking.hpp"

namespace expedition {

namespace {

bool by_score_then_id(const SalientEntity& a, const SalientEntity& b) {
    if (a.salience_score != b.salience_score) return a.salience_score > b.salience_score;
    return a.entity_id < b.entity_id;
}

}  // namespace

std::vector<SalientEntity> entity_scores(const Document& doc, const SalienceParams& params) {
    struct Stats {
        std::size_t freq = 0;
        std::size_t first = 0;
        bool in_title = false;
    };
    std::map<std::string, Stats> stats;
    for (const auto& m : doc.entity_mentions) {
        auto [it, fresh] = stats.try_emplace(m.entity_id, Stats{0, m.char_start, false});
        auto& s = it->second;
        ++s.freq;
        s.first = std::min(s.first, m.char_start);
        s.in_title = s.in_title || m.in_title;
    }
    std::size_t max_freq = 0;
    for (const auto& [id, s] : stats) max_freq = std::max(max_freq, s.freq);

    const double early_limit = params.early_fraction * static_cast<double>(doc.text_length());
    std::vector<SalientEntity> out;
    for (const auto& [id, s] : stats) {
        double score = static_cast<double>(s.freq) / static_cast<double>(max_freq);
        if (s.in_title) score += params.title_weight;
        if (static_cast<double>(s.first) < early_limit) score += params.early_weight;
        out.push_back({id, score, 0});
    }
    std::sort(out.begin(), out.end(), by_score_then_id);
    return out;
}

std::vector<SalientEntity> article_salience(const Document& doc, const SalienceParams& params) {
    auto all = entity_scores(doc, params);
    std::erase_if(all, [&](const SalientEntity& e) { return e.salience_score < params.threshold; });
    return all;
}

std::vector<SalientEntity> query_entity_selectors(std::span<const ScoredDoc> ranked, const Index& index,
                                                  const SelectorParams& params) {
    std::map<std::string, std::uint32_t> df;
    const std::size_t n = std::min(params.top_docs, ranked.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : index.doc_salience(ranked[i].doc)) ++df[e.entity_id];
    }
    std::vector<SalientEntity> out;
    out.reserve(df.size());
    for (const auto& [id, count] : df) out.push_back({id, 0.0, count});
    // std::map iteration is id-ascending, so a stable sort keeps the id tie-break.
    std::stable_sort(out.begin(), out.end(),
                     [](const SalientEntity& a, const SalientEntity& b) { return a.doc_frequency > b.doc_frequency; });
    if (out.size() > params.max_selectors) out.resize(params.max_selectors);
    return out;
}

}  // namespace expedition
