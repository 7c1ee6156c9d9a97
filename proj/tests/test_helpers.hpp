#pragma once

#include <fcdtt/fcdtt.hpp>

namespace fcdtt_test {

using namespace fcdtt;

// 19 linearly spaced values from lo (p5) to hi (p95).
inline PercentileDistribution linear_dist(double lo, double hi) {
    PercentileDistribution d;
    d.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        d.values[k] = lo + (hi - lo) * double(k) / double(kPercentileCount - 1);
    return d;
}

inline PercentileDistribution constant_dist(double v) {
    PercentileDistribution d;
    d.values.assign(kPercentileCount, v);
    return d;
}

// Random valid distribution: positive start, non-negative increments, with
// occasional flat runs.
inline PercentileDistribution random_dist(RandomStream& rng) {
    PercentileDistribution d;
    d.values.resize(kPercentileCount);
    double v = 1.0 + 100.0 * rng.next_uniform();
    for (std::size_t k = 0; k < kPercentileCount; ++k) {
        d.values[k] = v;
        if (rng.next_uniform() < 0.2)
            continue; // flat segment
        v += 20.0 * rng.next_uniform();
    }
    return d;
}

// Valid link record with a small symmetric fan around the median speed and
// consistent travel-time percentiles.
inline LinkRecord fan_link_record(const std::string& link_id, const Date& date,
                                  int tod_start, double median_kmh,
                                  double length_m, double spread = 0.05,
                                  std::size_t sample_size = 5) {
    LinkRecord r;
    r.link_id = link_id;
    r.date = date;
    r.tod = {tod_start, tod_start + kNativeTodSeconds};
    r.sample_size = sample_size;
    r.speed_limit_kmh = 130.0;
    PercentileDistribution sp;
    sp.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        sp.values[k] =
            median_kmh * (1.0 + spread * (percentile_level(k) - 0.5) / 0.45);
    r.speed_percentiles_kmh = sp;
    PercentileDistribution tt;
    tt.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        tt.values[k] = length_m / (sp.values[kPercentileCount - 1 - k] / 3.6);
    r.travel_time_percentiles_s = tt;
    return r;
}

// Simple least-squares slope of y over x.
inline double regression_slope(const std::vector<double>& x,
                               const std::vector<double>& y) {
    double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace fcdtt_test
