#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fcdtt {

inline constexpr int kSecondsPerDay = 86400;
inline constexpr int kNativeTodSeconds = 300; // finest source granularity

// Half-open-ish time-of-day window [start, end], seconds since midnight.
struct TodInterval {
    int start_s = 0;
    int end_s = 0;

    void validate() const {
        if (!(0 <= start_s && start_s < end_s && end_s <= kSecondsPerDay))
            throw InputError("invalid TOD interval [" +
                             std::to_string(start_s) + ", " +
                             std::to_string(end_s) + "]");
    }

    int width_s() const { return end_s - start_s; }
    double midpoint_s() const { return 0.5 * (start_s + end_s); }

    bool contains(double t_s) const { return t_s >= start_s && t_s < end_s; }

    bool overlaps(const TodInterval& other) const {
        return start_s < other.end_s && other.start_s < end_s;
    }

    bool operator==(const TodInterval&) const = default;
};

enum class TodSchemeKind { Fixed5Min, Fixed20Min, DemandBased5 };

struct TodScheme {
    TodSchemeKind kind;
    std::string name;
    std::vector<TodInterval> intervals; // ordered, covering [0, 86400)

    // Index of the interval containing time-of-day t (wrapped into the day).
    std::size_t interval_index(double t_s) const {
        double t = t_s - double(kSecondsPerDay) * std::floor(t_s / kSecondsPerDay);
        for (std::size_t j = 0; j < intervals.size(); ++j)
            if (intervals[j].contains(t)) return j;
        return intervals.size() - 1; // t == 86400 edge
    }

    bool route_level() const { return kind == TodSchemeKind::DemandBased5; }
};

inline TodScheme make_fixed_scheme(TodSchemeKind kind, int width_s,
                                   const std::string& name) {
    TodScheme scheme{kind, name, {}};
    for (int t = 0; t < kSecondsPerDay; t += width_s)
        scheme.intervals.push_back({t, t + width_s});
    return scheme;
}

// Default demand-based partition: night, morning rush, daytime, evening
// rush, evening.
inline TodScheme make_demand_based_scheme() {
    TodScheme scheme{TodSchemeKind::DemandBased5, "demand5", {}};
    const int bounds[] = {0,         6 * 3600 + 1800, 9 * 3600 + 1800,
                          16 * 3600, 19 * 3600,       kSecondsPerDay};
    for (int i = 0; i < 5; ++i)
        scheme.intervals.push_back({bounds[i], bounds[i + 1]});
    return scheme;
}

inline TodScheme make_scheme(const std::string& name) {
    if (name == "5min")
        return make_fixed_scheme(TodSchemeKind::Fixed5Min, 300, "5min");
    if (name == "20min")
        return make_fixed_scheme(TodSchemeKind::Fixed20Min, 1200, "20min");
    if (name == "demand5") return make_demand_based_scheme();
    throw UsageError("unknown TOD scheme '" + name +
                     "' (expected 5min, 20min or demand5)");
}

} // namespace fcdtt
