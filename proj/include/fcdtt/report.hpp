#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "forecast.hpp"
#include "speed_field.hpp"

namespace fcdtt {

namespace detail {

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

} // namespace detail

// Plot-ready grid table: parameter header block, then x_m t_s speed_kmh rows.
inline void write_grid_report(std::ostream& os, const SpeedGrid& grid,
                              const AsmParams& params) {
    os << "# c_free_kmh " << detail::fmt("%g", params.c_free_kmh) << '\n'
       << "# c_cong_kmh " << detail::fmt("%g", params.c_cong_kmh) << '\n'
       << "# v_c_kmh " << detail::fmt("%g", params.v_c_kmh) << '\n'
       << "# delta_v_kmh " << detail::fmt("%g", params.delta_v_kmh) << '\n'
       << "x_m\tt_s\tspeed_kmh\n";
    for (std::size_t ix = 0; ix < grid.nx; ++ix)
        for (std::size_t it = 0; it < grid.nt; ++it)
            os << detail::fmt("%.1f", grid.cell_x(ix)) << '\t'
               << detail::fmt("%.1f", grid.cell_t(it)) << '\t'
               << detail::fmt("%.3f", grid.at(ix, it)) << '\n';
}

// One row of the departure-time sweep table.
inline void write_estimate_header(std::ostream& os) {
    os << "departure_time_s\tscheme\talpha\tmean_tt_s\tstd_tt_s";
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        os << "\tp" << int(percentile_level(k) * 100 + 0.5);
    os << '\n';
}

inline void write_estimate_row(std::ostream& os, double departure_time_s,
                               const std::string& scheme, double alpha,
                               const EstimateResult& est) {
    os << int(departure_time_s) << '\t' << scheme << '\t'
       << detail::fmt("%g", alpha) << '\t'
       << detail::fmt("%.3f", est.summary.mean) << '\t'
       << detail::fmt("%.3f", est.summary.std);
    for (double v : est.summary.percentiles.values)
        os << '\t' << detail::fmt("%.3f", v);
    os << '\n';
}

struct ForecastTableRow {
    std::string strategy;
    std::size_t range_days;
    std::string scheme;
    double mean_tt_min;
    double std_tt_min;
    std::size_t sample_size;
};

// The forecast table as machine-readable text: one row per
// (strategy, scheme), means and stds in minutes.
inline void write_forecast_table(std::ostream& os,
                                 const std::vector<ForecastTableRow>& rows) {
    os << "strategy\trange_days\tscheme\tmean_tt_min\tstd_tt_min\tsample_size\n";
    for (const auto& r : rows)
        os << r.strategy << '\t' << r.range_days << '\t' << r.scheme << '\t'
           << detail::fmt("%.2f", r.mean_tt_min) << '\t'
           << detail::fmt("%.2f", r.std_tt_min) << '\t' << r.sample_size << '\n';
}

inline void write_comparison(std::ostream& os, const ComparisonReport& rep) {
    os << "reference_mean_s\t" << detail::fmt("%.3f", rep.reference_mean_s) << '\n'
       << "forecast_mean_s\t" << detail::fmt("%.3f", rep.forecast_mean_s) << '\n'
       << "forecast_std_s\t" << detail::fmt("%.3f", rep.forecast_std_s) << '\n'
       << "mean_error_s\t" << detail::fmt("%.3f", rep.mean_error_s) << '\n'
       << "z_score\t" << detail::fmt("%.3f", rep.z_score) << '\n'
       << "k\t" << detail::fmt("%g", rep.k) << '\n'
       << "overlap\t" << (rep.overlap ? "true" : "false") << '\n';
}

} // namespace fcdtt
