#pragma once

#include <cstddef>

namespace expedition {

/// Tunables shared by ranking, timeline and selector computation.
struct Params {
    double mu = 2000.0;               // Dirichlet smoothing
    std::size_t pool_size = 1000;     // pseudo-relevant pool
    std::size_t k = 50;               // result count
    double gamma = 1.0;               // temporal diversity decay
    double eta = 0.01;                // IA-Select relevance floor
    std::size_t hist_entities = 20;   // historical diversity: top-m entities
    std::size_t hist_buckets = 20;    // historical diversity: top-n months
    double epsilon = 1e-6;            // temporal relevance floor
    std::size_t prior_docs = 100;     // aspect priors come from this many pool docs
    double alpha = 0.5;               // publication vs reference mix
    double burst_k = 1.0;             // burst threshold in standard deviations
    std::size_t top_placements = 10;
    std::size_t max_labels = 3;
    std::size_t selector_docs = 100;
    std::size_t max_selectors = 10;
};

}  // namespace expedition
