#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dataset.hpp"
#include "random.hpp"

namespace fcdtt {

// A congestion band of fixed spatial extent whose upstream-moving front
// starts at origin_m at onset and travels at propagation_kmh (negative:
// against the driving direction).
struct CongestionEvent {
    double onset_s = 0.0;
    double origin_m = 0.0;
    double band_length_m = 0.0;
    double propagation_kmh = -15.0;
    double congested_speed_kmh = 20.0;
    double duration_s = 0.0;
};

struct ScenarioSpec {
    std::vector<std::tuple<std::string, double, double>> link_specs;
    std::string route_id = "R1";
    std::vector<Date> dates;
    double free_flow_speed_kmh = 100.0;
    double relative_spread = 0.08;  // half-width of percentile fan around the median
    double median_noise_kmh = 1.0;  // day-to-day jitter on cell medians
    std::size_t sample_size = 10;
    std::size_t route_sample_size = 50;
    bool emit_route_records = true;
    std::set<std::string> unobserved_links;
    std::vector<CongestionEvent> events;
    std::map<long, double> onset_offsets_s; // date ordinal -> shift applied to all events

    Route route() const { return make_route(route_id, link_specs); }

    void validate(const Route& r) const {
        if (dates.empty()) throw InputError("scenario: no dates");
        if (!(free_flow_speed_kmh > 0))
            throw InputError("scenario: free-flow speed must be positive");
        if (!(relative_spread >= 0 && relative_spread < 1))
            throw InputError("scenario: relative_spread must be in [0,1)");
        for (const auto& e : events) {
            if (!(e.onset_s >= 0 && e.onset_s < kSecondsPerDay))
                throw InputError("scenario: event onset outside [0, 86400)");
            if (!(e.duration_s > 0)) throw InputError("scenario: event duration must be positive");
            if (!(e.band_length_m > 0)) throw InputError("scenario: event band length must be positive");
            if (!(e.congested_speed_kmh > 0))
                throw InputError("scenario: congested speed must be positive");
            if (e.origin_m < 0 || e.origin_m > r.total_length_m)
                throw InputError("scenario: event origin outside route extent");
        }
    }

    double onset_offset(const Date& date) const {
        auto it = onset_offsets_s.find(date_ordinal(date));
        return it == onset_offsets_s.end() ? 0.0 : it->second;
    }

    // Noise-free scenario speed at position x (m from route origin) and
    // time-of-day t on the given date.
    double true_speed_kmh(double x_m, double t_s, const Date& date) const {
        double offset = onset_offset(date);
        double speed = free_flow_speed_kmh;
        for (const auto& e : events) {
            double onset = e.onset_s + offset;
            if (t_s < onset || t_s > onset + e.duration_s) continue;
            double front = e.origin_m + e.propagation_kmh / 3.6 * (t_s - onset);
            if (x_m >= front && x_m <= front + e.band_length_m)
                speed = std::min(speed, e.congested_speed_kmh);
        }
        return speed;
    }
};

namespace detail {

// Percentile fan around a median: linear from median*(1-spread) at p5 to
// median*(1+spread) at p95.
inline PercentileDistribution fan_percentiles(double median, double spread) {
    PercentileDistribution d;
    d.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k) {
        double z = (percentile_level(k) - 0.5) / 0.45; // -1 at p5 .. +1 at p95
        d.values[k] = median * (1.0 + spread * z);
    }
    return d;
}

inline PercentileDistribution travel_time_from_speeds(
    const PercentileDistribution& speeds_kmh, double length_m) {
    PercentileDistribution d;
    d.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        d.values[k] = length_m / (speeds_kmh.values[kPercentileCount - 1 - k] / 3.6);
    return d;
}

// Trip time through the scenario's noisy cell medians, entering-link rule.
inline double scenario_trip_time_s(const ScenarioSpec& spec, const Route& route,
                                   const Date& date, double departure_s,
                                   std::uint64_t seed) {
    double t = departure_s;
    for (const auto& link : route.links) {
        double tod_mid = std::floor(std::fmod(t, kSecondsPerDay) / kNativeTodSeconds) *
                             kNativeTodSeconds + kNativeTodSeconds / 2.0;
        std::size_t tod_index = std::size_t(tod_mid / kNativeTodSeconds);
        RandomStream noise(seed, link.index_on_route, std::uint64_t(date_ordinal(date)),
                           tod_index);
        double median = spec.true_speed_kmh(link.midpoint_m, tod_mid, date) +
                        noise.next_uniform(-spec.median_noise_kmh, spec.median_noise_kmh);
        median = std::max(median, 1.0);
        t += link.length_m / (median / 3.6);
    }
    return t - departure_s;
}

} // namespace detail

// Deterministic synthetic dataset: per-link, per-5-minute link records whose
// medians realize the scenario, plus route records over the demand-based
// intervals when enabled.
inline Dataset generate_synthetic(const ScenarioSpec& spec, std::uint64_t seed) {
    Route route = spec.route();
    spec.validate(route);
    Dataset dataset;
    for (const auto& date : spec.dates) {
        for (const auto& link : route.links) {
            if (spec.unobserved_links.count(link.id)) continue;
            for (int j = 0; j < kSecondsPerDay / kNativeTodSeconds; ++j) {
                TodInterval tod{j * kNativeTodSeconds, (j + 1) * kNativeTodSeconds};
                RandomStream noise(seed, link.index_on_route,
                                   std::uint64_t(date_ordinal(date)), std::uint64_t(j));
                double median =
                    spec.true_speed_kmh(link.midpoint_m, tod.midpoint_s(), date) +
                    noise.next_uniform(-spec.median_noise_kmh, spec.median_noise_kmh);
                median = std::max(median, 1.0);
                LinkRecord rec;
                rec.link_id = link.id;
                rec.date = date;
                rec.tod = tod;
                rec.sample_size = std::max<std::size_t>(spec.sample_size, 1);
                rec.speed_limit_kmh = link.speed_limit_kmh;
                rec.speed_percentiles_kmh =
                    detail::fan_percentiles(median, spec.relative_spread);
                rec.travel_time_percentiles_s = detail::travel_time_from_speeds(
                    *rec.speed_percentiles_kmh, link.length_m);
                dataset.add(std::move(rec));
            }
        }
        if (spec.emit_route_records) {
            for (const auto& interval : make_demand_based_scheme().intervals) {
                std::vector<double> samples;
                for (int t = interval.start_s + kNativeTodSeconds / 2;
                     t < interval.end_s; t += kNativeTodSeconds)
                    samples.push_back(
                        detail::scenario_trip_time_s(spec, route, date, t, seed));
                std::sort(samples.begin(), samples.end());
                RouteRecord rec;
                rec.route_id = route.id;
                rec.date = date;
                rec.tod = interval;
                rec.sample_size = std::max<std::size_t>(spec.route_sample_size, 1);
                PercentileDistribution tt;
                tt.values.resize(kPercentileCount);
                for (std::size_t k = 0; k < kPercentileCount; ++k)
                    tt.values[k] = sorted_percentile(samples, percentile_level(k));
                rec.travel_time_percentiles_s = std::move(tt);
                dataset.add(std::move(rec));
            }
        }
    }
    dataset.finalize();
    return dataset;
}

inline ScenarioSpec scenario_from_json(const nlohmann::json& j) {
    ScenarioSpec spec;
    const auto& rj = j.at("route");
    spec.route_id = rj.value("route_id", std::string("R1"));
    if (rj.contains("links")) {
        for (const auto& lj : rj.at("links"))
            spec.link_specs.emplace_back(lj.at("link_id").get<std::string>(),
                                         lj.at("length_m").get<double>(),
                                         lj.at("speed_limit_kmh").get<double>());
    } else {
        auto n = rj.at("n_links").get<std::size_t>();
        double length = rj.at("link_length_m").get<double>();
        double limit = rj.at("speed_limit_kmh").get<double>();
        for (std::size_t i = 0; i < n; ++i) {
            char id[32];
            std::snprintf(id, sizeof(id), "L%03zu", i);
            spec.link_specs.emplace_back(id, length, limit);
        }
    }
    for (const auto& dj : j.at("dates"))
        spec.dates.push_back(parse_date(dj.get<std::string>()));
    spec.free_flow_speed_kmh = j.value("free_flow_speed_kmh", 100.0);
    spec.relative_spread = j.value("relative_spread", 0.08);
    spec.median_noise_kmh = j.value("median_noise_kmh", 1.0);
    spec.sample_size = j.value("sample_size", std::size_t(10));
    spec.route_sample_size = j.value("route_sample_size", std::size_t(50));
    spec.emit_route_records = j.value("emit_route_records", true);
    if (j.contains("unobserved_links"))
        for (const auto& u : j.at("unobserved_links"))
            spec.unobserved_links.insert(u.get<std::string>());
    if (j.contains("events")) {
        for (const auto& ej : j.at("events")) {
            CongestionEvent e;
            e.onset_s = ej.at("onset_s").get<double>();
            e.origin_m = ej.at("origin_m").get<double>();
            e.band_length_m = ej.at("band_length_m").get<double>();
            e.propagation_kmh = ej.value("propagation_kmh", -15.0);
            e.congested_speed_kmh = ej.value("congested_speed_kmh", 20.0);
            e.duration_s = ej.at("duration_s").get<double>();
            spec.events.push_back(e);
        }
    }
    if (j.contains("onset_offsets_s"))
        for (auto it = j.at("onset_offsets_s").begin();
             it != j.at("onset_offsets_s").end(); ++it)
            spec.onset_offsets_s[date_ordinal(parse_date(it.key()))] =
                it.value().get<double>();
    return spec;
}

inline ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("scenario file not found: '" + path + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": parse error: " + e.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": bad scenario: " + e.what());
    }
}

} // namespace fcdtt
