#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "expedition/index.hpp"
#include "expedition/month.hpp"
#include "expedition/params.hpp"
#include "expedition/ranking.hpp"

namespace expedition {

struct BucketMass {
    Month month;
    double p_pub = 0.0;
    double p_ref = 0.0;
    double p_combined = 0.0;
};

struct Burst {
    Month start;
    Month end;
    Month peak;
    std::vector<std::string> labels;  // up to three headlines
    bool reference_driven = false;    // no pool document was published inside
};

struct Placement {
    std::string doc_id;
    std::size_t rank = 0;
    Month month;
};

/// Query-specific monthly profile over the full index span.
struct TimelineProfile {
    MonthInterval span;
    std::vector<BucketMass> buckets;
    std::vector<Burst> bursts;
    std::vector<Placement> top_placements;
    bool no_data = false;   // empty pool
    bool has_refs = false;  // at least some reference mass fell inside the span

    std::vector<double> combined() const;
    MonthlyDistribution combined_distribution() const;
};

/// p_pub from pool publication months, p_ref from pool temporal references
/// (each spread uniformly over its months, clipped to the span), mixed with weight alpha.
TimelineProfile temporal_profile(const CandidatePool& pool, const Index& index, double alpha);

/// A maximal run of buckets with p > mean + k * stddev (population), as index range.
struct BurstRun {
    std::size_t begin = 0;
    std::size_t end = 0;  // inclusive
    std::size_t peak = 0;
};

/// Flat series (stddev ~ 0) and series shorter than two buckets yield no runs.
std::vector<BurstRun> burst_runs(std::span<const double> series, double k);

std::vector<Burst> detect_bursts(const TimelineProfile& profile, double k);

/// Labels each burst with the titles of the best-scoring pool documents published inside it.
void label_bursts(std::vector<Burst>& bursts, const CandidatePool& pool, const Index& index, std::size_t max_labels = 3);

std::vector<Placement> place_top_docs(std::span<const ScoredDoc> ranked, const Index& index, std::size_t k = 10);

/// Profile + labelled bursts + placements of `ranked`.
TimelineProfile build_timeline(const CandidatePool& pool, std::span<const ScoredDoc> ranked, const Index& index,
                               const Params& params);

}  // namespace expedition
