#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "calendar.hpp"
#include "distribution.hpp"
#include "tod.hpp"

namespace fcdtt {

struct Link {
    std::string id;
    std::size_t index_on_route = 0;
    double length_m = 0.0;
    double speed_limit_kmh = 0.0;
    double midpoint_m = 0.0; // distance of link midpoint from route origin
};

struct Route {
    std::string id;
    std::vector<Link> links;
    double total_length_m = 0.0;

    double free_flow_time_s() const {
        double t = 0.0;
        for (const auto& l : links) t += l.length_m / (l.speed_limit_kmh / 3.6);
        return t;
    }
};

inline Route make_route(std::string id,
                        const std::vector<std::tuple<std::string, double, double>>&
                            link_specs /* (link_id, length_m, speed_limit_kmh) */) {
    Route route;
    route.id = std::move(id);
    double offset = 0.0;
    for (std::size_t i = 0; i < link_specs.size(); ++i) {
        const auto& [lid, length, limit] = link_specs[i];
        if (!(length > 0.0))
            throw InputError("link '" + lid + "': length must be positive");
        if (!(limit > 0.0))
            throw InputError("link '" + lid + "': speed limit must be positive");
        route.links.push_back({lid, i, length, limit, offset + length / 2.0});
        offset += length;
    }
    if (route.links.empty())
        throw InputError("route '" + route.id + "' has no links");
    route.total_length_m = offset;
    return route;
}

struct LinkRecord {
    std::string link_id;
    Date date;
    TodInterval tod;
    std::size_t sample_size = 0;
    bool full_traversal = false;
    double speed_limit_kmh = 0.0;
    std::optional<PercentileDistribution> speed_percentiles_kmh;
    std::optional<PercentileDistribution> travel_time_percentiles_s;

    void validate() const {
        tod.validate();
        if (sample_size == 0) {
            if (speed_percentiles_kmh || travel_time_percentiles_s)
                throw InputError("link record " + link_id + " " +
                                 format_date(date) +
                                 ": percentiles present with sample_size 0");
            return;
        }
        if (!speed_percentiles_kmh || !travel_time_percentiles_s)
            throw InputError("link record " + link_id + " " + format_date(date) +
                             ": percentiles missing with sample_size > 0");
        speed_percentiles_kmh->validate();
        travel_time_percentiles_s->validate();
    }

    // Cross-field check: speed p_k should match length / travel-time p_{100-k}
    // within 5%. Needs the link length, so it runs once geometry is known.
    void validate_consistency(double length_m) const {
        if (sample_size == 0) return;
        const auto& sp = speed_percentiles_kmh->values;
        const auto& tp = travel_time_percentiles_s->values;
        for (std::size_t k = 0; k < kPercentileCount; ++k) {
            double implied_kmh = length_m / tp[kPercentileCount - 1 - k] * 3.6;
            if (std::abs(implied_kmh - sp[k]) > 0.05 * sp[k])
                throw InputError("link record " + link_id + " " +
                                 format_date(date) +
                                 ": speed/travel-time percentiles inconsistent at index " +
                                 std::to_string(k));
        }
    }

    bool operator==(const LinkRecord&) const = default;
};

struct RouteRecord {
    std::string route_id;
    Date date;
    TodInterval tod;
    std::size_t sample_size = 0;
    bool full_traversal = false;
    std::optional<PercentileDistribution> travel_time_percentiles_s;

    void validate() const {
        tod.validate();
        if (sample_size == 0) {
            if (travel_time_percentiles_s)
                throw InputError("route record " + route_id + " " +
                                 format_date(date) +
                                 ": percentiles present with sample_size 0");
            return;
        }
        if (!travel_time_percentiles_s)
            throw InputError("route record " + route_id + " " + format_date(date) +
                             ": percentiles missing with sample_size > 0");
        travel_time_percentiles_s->validate();
    }

    bool operator==(const RouteRecord&) const = default;
};

enum class QueryTarget { LinkBased, RouteBased };

struct FcdQuery {
    QueryTarget target = QueryTarget::LinkBased;
    Date date_from;
    Date date_to; // inclusive
    std::set<unsigned> days_of_week; // weekday c_encoding, 0 = Sunday
    TodInterval tod{0, kSecondsPerDay};
    bool full_traversal = false; // kept disabled by default, like the source

    void validate() const {
        if (date_ordinal(date_from) > date_ordinal(date_to))
            throw InputError("query: empty date range");
        if (days_of_week.empty())
            throw InputError("query: days_of_week must be non-empty");
        tod.validate();
    }

    bool matches_date(const Date& d) const {
        long o = date_ordinal(d);
        if (o < date_ordinal(date_from) || o > date_ordinal(date_to))
            return false;
        return days_of_week.count(weekday_of(d).c_encoding()) > 0;
    }
};

inline std::set<unsigned> all_weekdays() {
    return {0, 1, 2, 3, 4, 5, 6};
}

// Immutable after load; concurrent queries are safe.
class Dataset {
public:
    void add(LinkRecord rec) {
        rec.validate();
        link_records_.push_back(std::move(rec));
        sorted_ = false;
    }

    void add(RouteRecord rec) {
        rec.validate();
        route_records_.push_back(std::move(rec));
        sorted_ = false;
    }

    void finalize() {
        auto link_key = [](const LinkRecord& r) {
            return std::make_tuple(date_ordinal(r.date), r.tod.start_s, r.link_id);
        };
        std::sort(link_records_.begin(), link_records_.end(),
                  [&](const auto& a, const auto& b) { return link_key(a) < link_key(b); });
        auto route_key = [](const RouteRecord& r) {
            return std::make_tuple(date_ordinal(r.date), r.tod.start_s, r.route_id);
        };
        std::sort(route_records_.begin(), route_records_.end(),
                  [&](const auto& a, const auto& b) { return route_key(a) < route_key(b); });
        sorted_ = true;
    }

    const std::vector<LinkRecord>& link_records() const { return link_records_; }
    const std::vector<RouteRecord>& route_records() const { return route_records_; }

    std::vector<LinkRecord> query_links(const FcdQuery& q) const {
        q.validate();
        std::vector<LinkRecord> out;
        for (const auto& r : link_records_) {
            if (!q.matches_date(r.date)) continue;
            if (!r.tod.overlaps(q.tod)) continue;
            if (q.full_traversal && !r.full_traversal) continue;
            out.push_back(r);
        }
        return out;
    }

    std::vector<RouteRecord> query_routes(const FcdQuery& q) const {
        q.validate();
        std::vector<RouteRecord> out;
        for (const auto& r : route_records_) {
            if (!q.matches_date(r.date)) continue;
            if (!r.tod.overlaps(q.tod)) continue;
            if (q.full_traversal && !r.full_traversal) continue;
            out.push_back(r);
        }
        return out;
    }

    std::vector<Date> distinct_dates() const {
        std::set<long> ords;
        for (const auto& r : link_records_) ords.insert(date_ordinal(r.date));
        for (const auto& r : route_records_) ords.insert(date_ordinal(r.date));
        std::vector<Date> out;
        for (long o : ords) out.push_back(date_from_ordinal(o));
        return out;
    }

    std::size_t distinct_link_count() const {
        std::set<std::string> ids;
        for (const auto& r : link_records_) ids.insert(r.link_id);
        return ids.size();
    }

    void validate_consistency(const Route& route) const {
        std::map<std::string, double> lengths;
        for (const auto& l : route.links) lengths[l.id] = l.length_m;
        for (const auto& r : link_records_) {
            auto it = lengths.find(r.link_id);
            if (it != lengths.end()) r.validate_consistency(it->second);
        }
    }

    bool operator==(const Dataset& other) const {
        return link_records_ == other.link_records_ &&
               route_records_ == other.route_records_;
    }

private:
    std::vector<LinkRecord> link_records_;
    std::vector<RouteRecord> route_records_;
    bool sorted_ = false;
};

} // namespace fcdtt
