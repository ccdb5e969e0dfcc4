#include "expedition/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace expedition {

std::vector<double> TimelineProfile::combined() const {
    std::vector<double> out;
    out.reserve(buckets.size());
    for (const auto& b : buckets) out.push_back(b.p_combined);
    return out;
}

MonthlyDistribution TimelineProfile::combined_distribution() const { return {span, combined()}; }

TimelineProfile temporal_profile(const CandidatePool& pool, const Index& index, double alpha) {
    TimelineProfile profile;
    profile.span = index.span();
    const auto months = static_cast<std::size_t>(profile.span.length());
    profile.buckets.resize(months);
    for (std::size_t i = 0; i < months; ++i) profile.buckets[i].month = profile.span.first + static_cast<int>(i);
    if (pool.empty()) {
        profile.no_data = true;
        return profile;
    }

    auto slot = [&](Month m) { return static_cast<std::size_t>(m - profile.span.first); };
    std::vector<double> pub(months, 0.0);
    std::vector<double> ref(months, 0.0);
    for (const auto& c : pool.items) {
        pub[slot(c.bucket)] += 1.0;
        for (const auto& r : index.document(c.doc).temporal_refs) {
            const double share = 1.0 / static_cast<double>(r.end_month - r.start_month + 1);
            const Month first = std::max(r.start_month, profile.span.first);
            const Month last = std::min(r.end_month, profile.span.last);
            for (Month m = first; m <= last; m = m + 1) ref[slot(m)] += share;
        }
    }
    const double n = static_cast<double>(pool.items.size());
    const double ref_total = std::accumulate(ref.begin(), ref.end(), 0.0);
    profile.has_refs = ref_total > 0.0;
    for (std::size_t i = 0; i < months; ++i) {
        auto& b = profile.buckets[i];
        b.p_pub = pub[i] / n;
        if (profile.has_refs) {
            b.p_ref = ref[i] / ref_total;
            b.p_combined = alpha * b.p_pub + (1.0 - alpha) * b.p_ref;
        } else {
            b.p_combined = b.p_pub;
        }
    }
    return profile;
}

std::vector<BurstRun> burst_runs(std::span<const double> series, double k) {
    std::vector<BurstRun> runs;
    if (series.size() < 2) return runs;
    const double n = static_cast<double>(series.size());
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
    double var = 0.0;
    for (double x : series) var += (x - mean) * (x - mean);
    const double sigma = std::sqrt(var / n);
    // Rounding noise on a constant series is not a burst.
    if (sigma == 0.0 || sigma <= 1e-9 * std::abs(mean)) return runs;
    const double threshold = mean + k * sigma;

    for (std::size_t i = 0; i < series.size();) {
        if (!(series[i] > threshold)) {
            ++i;
            continue;
        }
        BurstRun run{i, i, i};
        while (i < series.size() && series[i] > threshold) {
            if (series[i] > series[run.peak]) run.peak = i;
            run.end = i++;
        }
        runs.push_back(run);
    }
    return runs;
}

std::vector<Burst> detect_bursts(const TimelineProfile& profile, double k) {
    std::vector<Burst> out;
    if (profile.no_data) return out;
    const auto series = profile.combined();
    for (const auto& r : burst_runs(series, k)) {
        out.push_back({profile.buckets[r.begin].month, profile.buckets[r.end].month, profile.buckets[r.peak].month, {}, false});
    }
    return out;
}

void label_bursts(std::vector<Burst>& bursts, const CandidatePool& pool, const Index& index, std::size_t max_labels) {
    for (auto& b : bursts) {
        b.labels.clear();
        for (const auto& c : pool.items) {
            if (b.labels.size() == max_labels) break;
            if (b.start <= c.bucket && c.bucket <= b.end) b.labels.push_back(index.document(c.doc).title);
        }
        b.reference_driven = b.labels.empty();
    }
}

std::vector<Placement> place_top_docs(std::span<const ScoredDoc> ranked, const Index& index, std::size_t k) {
    std::vector<Placement> out;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        out.push_back({ranked[i].doc_id, ranked[i].rank, index.doc_bucket(ranked[i].doc)});
    }
    return out;
}

TimelineProfile build_timeline(const CandidatePool& pool, std::span<const ScoredDoc> ranked, const Index& index,
                               const Params& params) {
    auto profile = temporal_profile(pool, index, params.alpha);
    profile.bursts = detect_bursts(profile, params.burst_k);
    label_bursts(profile.bursts, pool, index, params.max_labels);
    profile.top_placements = place_top_docs(ranked, index, params.top_placements);
    return profile;
}

}  // namespace expedition
