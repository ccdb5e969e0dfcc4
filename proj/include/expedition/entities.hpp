#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "expedition/corpus.hpp"
#include "expedition/index.hpp"

namespace expedition {

struct ScoredDoc;

/// Weights of the salience heuristic.
struct SalienceParams {
    double title_weight = 2.0;
    double early_weight = 1.0;
    double early_fraction = 0.2;  // "early" = first mention starts in the first 20% of the text
    double threshold = 1.0;
};

/// Salient entities of one article, score descending (ties by entity id).
/// score = title_weight*[mentioned in title] + early_weight*[first mention early] + freq/max_freq.
std::vector<SalientEntity> article_salience(const Document& doc, const SalienceParams& params = {});

/// Same heuristic, but returns every distinct entity with its score (salient or not).
std::vector<SalientEntity> entity_scores(const Document& doc, const SalienceParams& params = {});

struct SelectorParams {
    std::size_t top_docs = 100;
    std::size_t max_selectors = 10;
};

/// Query-time entity selectors: document frequency of salient entities over
/// the first `top_docs` results, sorted by frequency desc then id, at most `max_selectors`.
std::vector<SalientEntity> query_entity_selectors(std::span<const ScoredDoc> ranked, const Index& index,
                                                  const SelectorParams& params = {});

}  // namespace expedition
