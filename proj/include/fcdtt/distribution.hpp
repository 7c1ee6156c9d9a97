#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fcdtt {

inline constexpr std::size_t kPercentileCount = 19;

// The 19 percentile levels 0.05, 0.10, ..., 0.95 shared by every empirical
// distribution in the FCD source.
inline double percentile_level(std::size_t index) {
    return 0.05 * double(index + 1);
}

// An empirical distribution given by its 5th..95th percentile values
// (speeds in km/h or travel times in seconds).
struct PercentileDistribution {
    std::vector<double> values; // ordered p5 -> p95, exactly 19 entries

    void validate() const {
        if (values.size() != kPercentileCount)
            throw InputError("percentile list must have 19 entries, got " +
                             std::to_string(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] > 0.0))
                throw InputError("percentile value at index " +
                                 std::to_string(i) + " must be positive");
            if (i > 0 && values[i] < values[i - 1])
                throw InputError("percentile values decrease at index " +
                                 std::to_string(i));
        }
    }

    double median() const { return values.at(9); } // p50 is stored directly

    bool operator==(const PercentileDistribution&) const = default;
};

// Piecewise-linear CDF over the 19 percentile points. Tails beyond p5/p95
// are clamped to the boundary values: the data source exposes nothing
// outside that range, so extremes are biased conservatively.
class PiecewiseCdf {
public:
    PiecewiseCdf() = default;

    static PiecewiseCdf constant(double value) {
        PiecewiseCdf cdf;
        cdf.values_.assign(kPercentileCount, value);
        return cdf;
    }

    double support_min() const { return values_.front(); }
    double support_max() const { return values_.back(); }

    bool degenerate() const { return support_min() == support_max(); }

    // Inverse CDF. Quantiles below 0.05 return the p5 value, above 0.95 the
    // p95 value. Exact at the stored percentile levels.
    double inverse(double u) const {
        if (u <= 0.05) return values_.front();
        if (u >= 0.95) return values_.back();
        auto idx = std::size_t(std::max(0.0, u * 20.0 - 1.0));
        if (idx >= kPercentileCount - 1) idx = kPercentileCount - 2;
        // index arithmetic can be off by one ulp; snap to the right segment
        while (idx > 0 && u < percentile_level(idx)) --idx;
        while (idx < kPercentileCount - 2 && u > percentile_level(idx + 1)) ++idx;
        if (u == percentile_level(idx)) return values_[idx];
        if (u == percentile_level(idx + 1)) return values_[idx + 1];
        double frac = (u - percentile_level(idx)) / 0.05;
        return values_[idx] + frac * (values_[idx + 1] - values_[idx]);
    }

    // Forward CDF lookup. Flat segments map to the midpoint of the matching
    // probability interval so the result is deterministic.
    double quantile_of(double value) const {
        if (value < values_.front()) return 0.0;
        if (value > values_.back()) return 1.0;
        auto lo = std::lower_bound(values_.begin(), values_.end(), value);
        auto hi = std::upper_bound(values_.begin(), values_.end(), value);
        if (lo != hi) {
            // value coincides with one or more breakpoints
            double p_lo = percentile_level(std::size_t(lo - values_.begin()));
            double p_hi = percentile_level(std::size_t(hi - values_.begin()) - 1);
            return 0.5 * (p_lo + p_hi);
        }
        std::size_t i = std::size_t(lo - values_.begin());
        if (i == 0) return 0.05;
        double v0 = values_[i - 1], v1 = values_[i];
        double frac = (value - v0) / (v1 - v0);
        return percentile_level(i - 1) + frac * 0.05;
    }

    const std::vector<double>& breakpoints() const { return values_; }

    PercentileDistribution to_percentiles() const {
        return PercentileDistribution{values_};
    }

private:
    std::vector<double> values_;
    friend PiecewiseCdf build_cdf(const PercentileDistribution&);
};

inline PiecewiseCdf build_cdf(const PercentileDistribution& dist) {
    dist.validate();
    PiecewiseCdf cdf;
    cdf.values_ = dist.values;
    return cdf;
}

// Inverse-transform sample; deterministic function of (cdf, u).
inline double sample(const PiecewiseCdf& cdf, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw UsageError("sample: u out of [0,1]");
    return cdf.inverse(u);
}

inline double quantile_of(const PiecewiseCdf& cdf, double value) {
    return cdf.quantile_of(value);
}

// Sample restricted to the quantile window [q_lo, q_hi]. With (0,1) this is
// bitwise identical to sample(cdf, u).
inline double truncated_sample(const PiecewiseCdf& cdf, double q_lo,
                               double q_hi, double u) {
    if (!(q_lo >= 0.0 && q_hi <= 1.0 && q_lo < q_hi))
        throw UsageError("truncated_sample: degenerate quantile window");
    return sample(cdf, q_lo + u * (q_hi - q_lo));
}

struct SampleSummary {
    double mean = 0.0;
    double std = 0.0; // population standard deviation
    std::size_t count = 0;
    PercentileDistribution percentiles;
};

// Empirical percentile at level p with linear interpolation between order
// statistics (the (n-1)*p rule); input must be sorted.
inline double sorted_percentile(const std::vector<double>& sorted, double p) {
    double pos = p * double(sorted.size() - 1);
    auto idx = std::size_t(pos);
    if (idx >= sorted.size() - 1) return sorted.back();
    double frac = pos - double(idx);
    return sorted[idx] + frac * (sorted[idx + 1] - sorted[idx]);
}

inline SampleSummary summarize(std::vector<double> samples) {
    if (samples.empty())
        throw InputError("summarize: empty sample list");
    SampleSummary s;
    s.count = samples.size();
    double sum = 0.0;
    for (double v : samples) sum += v;
    s.mean = sum / double(samples.size());
    double sq = 0.0;
    for (double v : samples) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / double(samples.size()));
    std::sort(samples.begin(), samples.end());
    s.percentiles.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        s.percentiles.values[k] = sorted_percentile(samples, percentile_level(k));
    return s;
}

} // namespace fcdtt
