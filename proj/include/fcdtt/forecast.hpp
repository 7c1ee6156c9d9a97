#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "estimation.hpp"

namespace fcdtt {

enum class HistoryKind { PrevWeek, PrevMonth, Prev3Months, Custom };

inline std::size_t history_day_count(HistoryKind kind) {
    switch (kind) {
        case HistoryKind::PrevWeek: return 1;
        case HistoryKind::PrevMonth: return 4;
        case HistoryKind::Prev3Months: return 12;
        case HistoryKind::Custom: return 0;
    }
    return 0;
}

inline std::string history_kind_name(HistoryKind kind) {
    switch (kind) {
        case HistoryKind::PrevWeek: return "prev-week";
        case HistoryKind::PrevMonth: return "prev-month";
        case HistoryKind::Prev3Months: return "prev-3-months";
        case HistoryKind::Custom: return "custom";
    }
    return "?";
}

inline HistoryKind history_kind_from_name(const std::string& name) {
    if (name == "prev-week") return HistoryKind::PrevWeek;
    if (name == "prev-month") return HistoryKind::PrevMonth;
    if (name == "prev-3-months") return HistoryKind::Prev3Months;
    if (name == "custom") return HistoryKind::Custom;
    throw UsageError("unknown history strategy '" + name + "'");
}

struct HistoryStrategy {
    HistoryKind kind = HistoryKind::PrevWeek;
    bool weekday_lock = true;
    std::set<long> exclusions;        // date ordinals (holidays etc.)
    std::vector<Date> custom_dates;   // used when kind == Custom
};

// The most recent qualifying same-weekday dates strictly before the target,
// newest first. Exclusions are skipped; fewer days than the nominal count is
// acceptable as long as at least one remains.
inline std::vector<Date> select_historical_days(const Date& target_date,
                                                const HistoryStrategy& strategy,
                                                const std::vector<Date>& available_dates) {
    if (available_dates.empty())
        throw InsufficientDataError("no dates available for history selection");
    if (strategy.kind == HistoryKind::Custom) {
        if (strategy.custom_dates.empty())
            throw InsufficientDataError("custom history strategy with no dates");
        return strategy.custom_dates;
    }
    std::vector<long> candidates;
    long target_ord = date_ordinal(target_date);
    for (const auto& d : available_dates) {
        long o = date_ordinal(d);
        if (o >= target_ord) continue;
        if (strategy.weekday_lock && weekday_of(d) != weekday_of(target_date)) continue;
        if (strategy.exclusions.count(o)) continue;
        candidates.push_back(o);
    }
    std::sort(candidates.rbegin(), candidates.rend());
    std::size_t want = history_day_count(strategy.kind);
    if (candidates.size() > want) candidates.resize(want);
    if (candidates.empty()) {
        std::string found;
        for (const auto& d : available_dates) found += " " + format_date(d);
        throw InsufficientDataError(
            "no usable historical day before " + format_date(target_date) +
            "; dataset contains:" + found);
    }
    std::vector<Date> out;
    for (long o : candidates) out.push_back(date_from_ordinal(o));
    return out;
}

struct Forecast {
    Date target_date;
    double departure_time_s = 0.0;
    std::string strategy_name;
    std::string scheme_name;
    double alpha = 1.0;
    std::vector<Date> historical_days;
    std::vector<double> samples_s; // pooled across days, sorted
    SampleSummary summary;
    std::size_t fcd_sample_size = 0;
    bool short_interval_warning = false;
};

namespace detail {

inline EstimateResult estimate_one_day(const Dataset& dataset, const Route& route,
                                       const Date& day, double departure_time_s,
                                       const TodScheme& scheme,
                                       const SimulationConfig& config) {
    if (scheme.route_level()) {
        std::vector<RouteRecord> records;
        for (const auto& r : dataset.route_records())
            if (date_ordinal(r.date) == date_ordinal(day) && r.route_id == route.id)
                records.push_back(r);
        return route_based_estimate(records, route, departure_time_s,
                                    config.n_runs, config.seed);
    }
    TravelTimeMatrix matrix = build_matrix(dataset, route, scheme, {day});
    return estimate_distribution(matrix, departure_time_s, config);
}

} // namespace detail

// Per-day estimates pooled at the raw-sample level, so multi-modality across
// historical days survives into the forecast distribution.
inline Forecast forecast(const Dataset& dataset, const Route& route,
                         const Date& target_date, double departure_time_s,
                         const HistoryStrategy& strategy, const TodScheme& scheme,
                         const SimulationConfig& config) {
    config.validate();
    auto days = select_historical_days(target_date, strategy,
                                       dataset.distinct_dates());
    Forecast fc;
    fc.target_date = target_date;
    fc.departure_time_s = departure_time_s;
    fc.strategy_name = history_kind_name(strategy.kind);
    fc.scheme_name = scheme.name;
    fc.alpha = config.alpha;
    fc.historical_days = days;
    for (const auto& day : days) {
        EstimateResult est = detail::estimate_one_day(dataset, route, day,
                                                      departure_time_s, scheme, config);
        fc.samples_s.insert(fc.samples_s.end(), est.samples_s.begin(),
                            est.samples_s.end());
        fc.fcd_sample_size += est.fcd_sample_size;
        fc.short_interval_warning |= est.short_interval_warning;
    }
    std::sort(fc.samples_s.begin(), fc.samples_s.end());
    fc.summary = summarize(fc.samples_s);
    return fc;
}

// Ground-truth proxy: the same estimator run on the target date's own data.
inline EstimateResult reference_estimate(const Dataset& dataset, const Route& route,
                                         const Date& target_date,
                                         double departure_time_s,
                                         const TodScheme& scheme,
                                         const SimulationConfig& config) {
    bool present = false;
    for (const auto& d : dataset.distinct_dates())
        if (date_ordinal(d) == date_ordinal(target_date)) present = true;
    if (!present)
        throw InsufficientDataError("target date " + format_date(target_date) +
                                    " absent from dataset");
    return detail::estimate_one_day(dataset, route, target_date, departure_time_s,
                                    scheme, config);
}

struct ComparisonReport {
    double reference_mean_s = 0.0;
    double forecast_mean_s = 0.0;
    double forecast_std_s = 0.0;
    double mean_error_s = 0.0; // forecast - reference
    double z_score = 0.0;      // |reference - forecast| / forecast std
    double k = 1.0;
    bool overlap = false; // reference mean within forecast mean +/- k std
};

inline ComparisonReport compare(const SampleSummary& reference,
                                const SampleSummary& fc, double k = 1.0) {
    ComparisonReport rep;
    rep.reference_mean_s = reference.mean;
    rep.forecast_mean_s = fc.mean;
    rep.forecast_std_s = fc.std;
    rep.mean_error_s = fc.mean - reference.mean;
    rep.k = k;
    double abs_err = std::abs(rep.mean_error_s);
    if (fc.std == 0.0)
        rep.z_score = abs_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        rep.z_score = abs_err / fc.std;
    rep.overlap = abs_err <= k * fc.std;
    return rep;
}

} // namespace fcdtt
