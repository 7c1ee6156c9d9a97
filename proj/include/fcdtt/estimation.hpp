#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "random.hpp"

namespace fcdtt {

// One matrix entry: a sampleable speed distribution for (link, interval).
// When no FCD record matched, the cell degenerates to the link's speed
// limit (free-flow fallback) and contributes zero variance.
struct MatrixCell {
    PiecewiseCdf speed_cdf_kmh;
    bool fallback = false;
    std::size_t fcd_sample_size = 0; // probes behind the pooled distribution
};

struct SimulationConfig {
    double alpha = 1.0; // inter-link dependence; 1 = fully independent draws
    std::size_t n_runs = 500;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw UsageError("alpha must be in (0, 1]");
        if (n_runs < 1) throw UsageError("n_runs must be >= 1");
    }
};

struct LinkTrace {
    double entry_time_s;
    double sampled_speed_kmh;
};

struct TripResult {
    double departure_time_s = 0.0;
    double travel_time_s = 0.0;
    std::vector<LinkTrace> trace;
};

namespace detail {

// Pool several percentile distributions into one empirical CDF. Each source
// contributes evenly spaced pseudo-samples in proportion to its FCD sample
// size, and the pooled percentiles are taken over the merged set.
inline PiecewiseCdf pool_cdfs(const std::vector<const PercentileDistribution*>& sources,
                              const std::vector<std::size_t>& sample_sizes) {
    if (sources.size() == 1) return build_cdf(*sources.front());
    std::vector<double> merged;
    for (std::size_t s = 0; s < sources.size(); ++s) {
        PiecewiseCdf cdf = build_cdf(*sources[s]);
        std::size_t n = std::max<std::size_t>(sample_sizes[s], 1) * kPercentileCount;
        for (std::size_t k = 0; k < n; ++k)
            merged.push_back(cdf.inverse((double(k) + 0.5) / double(n)));
    }
    std::sort(merged.begin(), merged.end());
    PercentileDistribution pooled;
    pooled.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        pooled.values[k] = sorted_percentile(merged, percentile_level(k));
    return build_cdf(pooled);
}

} // namespace detail

// Links x TOD-intervals grid of link speed distributions.
class TravelTimeMatrix {
public:
    TravelTimeMatrix(Route route, TodScheme scheme)
        : route_(std::move(route)), scheme_(std::move(scheme)) {
        if (scheme_.intervals.empty()) throw InputError("empty TOD scheme");
        cells_.resize(route_.links.size() * scheme_.intervals.size());
    }

    const Route& route() const { return route_; }
    const TodScheme& scheme() const { return scheme_; }

    MatrixCell& cell(std::size_t link, std::size_t interval) {
        return cells_[link * scheme_.intervals.size() + interval];
    }
    const MatrixCell& cell(std::size_t link, std::size_t interval) const {
        return cells_[link * scheme_.intervals.size() + interval];
    }

    const MatrixCell& cell_at(std::size_t link, double time_of_day_s) const {
        return cell(link, scheme_.interval_index(time_of_day_s));
    }

private:
    Route route_;
    TodScheme scheme_;
    std::vector<MatrixCell> cells_;
};

// Pools every native record matching (link, scheme interval, dates) into the
// cell's speed CDF; cells with no data fall back to the speed limit.
inline TravelTimeMatrix build_matrix(const Dataset& dataset, const Route& route,
                                     const TodScheme& scheme,
                                     const std::vector<Date>& dates) {
    if (dates.empty()) throw InputError("build_matrix: no dates given");
    TravelTimeMatrix matrix(route, scheme);
    std::set<long> wanted;
    for (const auto& d : dates) wanted.insert(date_ordinal(d));

    std::map<std::string, std::size_t> link_index;
    for (const auto& l : route.links) link_index[l.id] = l.index_on_route;

    // bucket matching records per (link, interval)
    std::vector<std::vector<const LinkRecord*>> buckets(
        route.links.size() * scheme.intervals.size());
    for (const auto& r : dataset.link_records()) {
        if (!wanted.count(date_ordinal(r.date)) || r.sample_size == 0) continue;
        auto it = link_index.find(r.link_id);
        if (it == link_index.end()) continue;
        for (std::size_t j = 0; j < scheme.intervals.size(); ++j)
            if (r.tod.overlaps(scheme.intervals[j]))
                buckets[it->second * scheme.intervals.size() + j].push_back(&r);
    }

    for (std::size_t i = 0; i < route.links.size(); ++i) {
        for (std::size_t j = 0; j < scheme.intervals.size(); ++j) {
            MatrixCell& cell = matrix.cell(i, j);
            const auto& bucket = buckets[i * scheme.intervals.size() + j];
            if (bucket.empty()) {
                cell.fallback = true;
                cell.speed_cdf_kmh =
                    PiecewiseCdf::constant(route.links[i].speed_limit_kmh);
                continue;
            }
            std::vector<const PercentileDistribution*> sources;
            std::vector<std::size_t> sizes;
            for (const auto* r : bucket) {
                sources.push_back(&*r->speed_percentiles_kmh);
                sizes.push_back(r->sample_size);
                cell.fcd_sample_size += r->sample_size;
            }
            cell.speed_cdf_kmh = detail::pool_cdfs(sources, sizes);
        }
    }
    return matrix;
}

// One simulated trip. The first link's speed is drawn unconstrained; each
// later link is drawn from the quantile window [q - alpha, q + alpha] around
// the previous speed's quantile in the new cell. Deterministic given
// (seed, run_index).
inline TripResult simulate_trip(const TravelTimeMatrix& matrix,
                                double departure_time_s,
                                const SimulationConfig& config,
                                std::size_t run_index) {
    config.validate();
    if (!(departure_time_s >= 0.0 && departure_time_s < kSecondsPerDay))
        throw UsageError("departure time must be in [0, 86400)");
    RandomStream rng(config.seed, run_index);
    TripResult result;
    result.departure_time_s = departure_time_s;
    double t = departure_time_s;
    bool have_prev = false;
    double prev_speed = 0.0;
    for (const auto& link : matrix.route().links) {
        // late departures wrap into the next day's (identical) scheme
        const MatrixCell& cell = matrix.cell_at(link.index_on_route, t);
        double speed;
        if (cell.speed_cdf_kmh.degenerate()) {
            speed = cell.speed_cdf_kmh.support_min();
        } else if (!have_prev) {
            speed = sample(cell.speed_cdf_kmh, rng.next_uniform());
        } else {
            double q = quantile_of(cell.speed_cdf_kmh, prev_speed);
            double lo = std::max(0.0, q - config.alpha);
            double hi = std::min(1.0, q + config.alpha);
            speed = truncated_sample(cell.speed_cdf_kmh, lo, hi, rng.next_uniform());
        }
        result.trace.push_back({t, speed});
        prev_speed = speed;
        have_prev = true;
        t += link.length_m / (speed / 3.6);
    }
    result.travel_time_s = t - departure_time_s;
    return result;
}

struct EstimateResult {
    SampleSummary summary;
    std::vector<double> samples_s; // sorted travel times, one per run
    std::size_t fcd_sample_size = 0;
    bool short_interval_warning = false;
};

inline EstimateResult estimate_distribution(const TravelTimeMatrix& matrix,
                                            double departure_time_s,
                                            const SimulationConfig& config) {
    config.validate();
    EstimateResult result;
    result.samples_s.reserve(config.n_runs);
    for (std::size_t r = 0; r < config.n_runs; ++r)
        result.samples_s.push_back(
            simulate_trip(matrix, departure_time_s, config, r).travel_time_s);
    std::sort(result.samples_s.begin(), result.samples_s.end());
    result.summary = summarize(result.samples_s);
    // surfaced sample size: mean FCD probes behind the departure-time cells
    std::size_t total = 0;
    for (const auto& link : matrix.route().links)
        total += matrix.cell_at(link.index_on_route, departure_time_s).fcd_sample_size;
    result.fcd_sample_size =
        std::size_t(std::llround(double(total) / double(matrix.route().links.size())));
    return result;
}

// Route-level estimate by sampling the pooled route distribution directly.
// Meant for the wide demand-based intervals; a containing interval shorter
// than the route's free-flow time triggers the short-interval warning.
inline EstimateResult route_based_estimate(const std::vector<RouteRecord>& route_records,
                                           const Route& route,
                                           double departure_time_s,
                                           std::size_t n_draws, std::uint64_t seed) {
    std::vector<const PercentileDistribution*> sources;
    std::vector<std::size_t> sizes;
    int interval_width = 0;
    std::size_t total_fcd = 0;
    for (const auto& r : route_records) {
        if (r.sample_size == 0 || !r.tod.contains(departure_time_s)) continue;
        sources.push_back(&*r.travel_time_percentiles_s);
        sizes.push_back(r.sample_size);
        total_fcd += r.sample_size;
        interval_width = r.tod.width_s();
    }
    if (sources.empty())
        throw InsufficientDataError(
            "no route record covers departure time " +
            std::to_string(int(departure_time_s)) + " s");
    PiecewiseCdf cdf = detail::pool_cdfs(sources, sizes);
    RandomStream rng(seed, 0x726F757465ULL); // route-level stream tag
    EstimateResult result;
    result.samples_s.reserve(n_draws);
    for (std::size_t k = 0; k < n_draws; ++k)
        result.samples_s.push_back(sample(cdf, rng.next_uniform()));
    std::sort(result.samples_s.begin(), result.samples_s.end());
    result.summary = summarize(result.samples_s);
    result.fcd_sample_size = total_fcd;
    result.short_interval_warning = interval_width < route.free_flow_time_s();
    return result;
}

} // namespace fcdtt
