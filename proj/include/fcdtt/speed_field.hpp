#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace fcdtt {

// One discrete speed observation: a link's median speed placed at the link
// midpoint and the TOD interval midpoint, with smoothing widths sigma =
// half link length, tau = half interval width.
struct Measurement {
    double x_m = 0.0;
    double t_s = 0.0;
    double speed_kmh = 0.0;
    double sigma_m = 0.0;
    double tau_s = 0.0;
};

struct AsmParams {
    double c_free_kmh = 70.0;  // perturbation speed in free traffic
    double c_cong_kmh = -15.0; // perturbation speed in congested traffic
    double v_c_kmh = 50.0;     // free/congested threshold
    double delta_v_kmh = 10.0; // width of the transition

    void validate() const {
        if (!(c_free_kmh > 0.0) || !(c_cong_kmh < 0.0))
            throw InputError("ASM params: require c_free > 0 > c_cong");
        if (!(delta_v_kmh > 0.0))
            throw InputError("ASM params: delta_v must be positive");
    }
};

// exp kernel of the two smoothing passes; in (0, 1].
inline double kernel_weight(double dx_m, double dt_s, double sigma_m,
                            double tau_s) {
    return std::exp(-(std::abs(dx_m) / sigma_m + std::abs(dt_s) / tau_s));
}

// Terms whose kernel exponent exceeds the leading one by this much are
// skipped: each dropped weight is below ~2e-18 of the largest, keeping the
// weighted mean well inside 1e-9 relative of the full sum.
inline constexpr double kKernelRelativeCutoff = 41.0;

// One smoothing pass with propagation velocity c (km/h, nonzero): weighted
// mean of the measurement speeds along characteristics of slope c. The
// leading weight is factored out so the sum stays well scaled far from the
// data extent.
inline double component_field(const std::vector<Measurement>& measurements,
                              double c_kmh, double x_m, double t_s) {
    if (measurements.empty())
        throw InputError("component_field: no measurements");
    double c_mps = c_kmh / 3.6;
    double min_exponent = std::numeric_limits<double>::infinity();
    for (const auto& m : measurements) {
        double dx = x_m - m.x_m;
        double dt = t_s - m.t_s - dx / c_mps;
        double exponent = std::abs(dx) / m.sigma_m + std::abs(dt) / m.tau_s;
        min_exponent = std::min(min_exponent, exponent);
    }
    double num = 0.0, den = 0.0;
    for (const auto& m : measurements) {
        double dx = x_m - m.x_m;
        double dt = t_s - m.t_s - dx / c_mps;
        double exponent = std::abs(dx) / m.sigma_m + std::abs(dt) / m.tau_s;
        if (exponent > min_exponent + kKernelRelativeCutoff) continue;
        double w = std::exp(min_exponent - exponent);
        num += w * m.speed_kmh;
        den += w;
    }
    return num / den;
}

// Degree of congestion: 1/2 [1 + tanh((V_c - min(V_free, V_cong)) / dV)].
inline double congestion_weight(double v_free_kmh, double v_cong_kmh,
                                const AsmParams& params) {
    double v = std::min(v_free_kmh, v_cong_kmh);
    return 0.5 * (1.0 + std::tanh((params.v_c_kmh - v) / params.delta_v_kmh));
}

struct SpeedGrid {
    double x0_m = 0.0, t0_s = 0.0;
    double dx_m = 0.0, dt_s = 0.0;
    std::size_t nx = 0, nt = 0;
    std::vector<double> speeds_kmh; // row-major, index = ix * nt + it

    double at(std::size_t ix, std::size_t it) const {
        return speeds_kmh[ix * nt + it];
    }
    double cell_x(std::size_t ix) const { return x0_m + (double(ix) + 0.5) * dx_m; }
    double cell_t(std::size_t it) const { return t0_s + (double(it) + 0.5) * dt_s; }
};

struct TrajectoryPoint {
    double x_m;
    double t_s;
};

struct Trajectory {
    double departure_s = 0.0;
    double arrival_s = 0.0;
    std::vector<TrajectoryPoint> path;

    double travel_time_s() const { return arrival_s - departure_s; }
};

inline constexpr std::size_t kDefaultCellBudget = 4'000'000;

class SpeedField {
public:
    SpeedField(std::vector<Measurement> measurements, AsmParams params)
        : measurements_(std::move(measurements)), params_(params) {
        params_.validate();
        if (measurements_.empty())
            throw InputError("speed field: no measurements");
        for (const auto& m : measurements_)
            if (!(m.sigma_m > 0 && m.tau_s > 0 && m.speed_kmh > 0))
                throw InputError("speed field: invalid measurement");
    }

    const std::vector<Measurement>& measurements() const { return measurements_; }
    const AsmParams& params() const { return params_; }

    // Blend of the two passes by the degree of congestion.
    double evaluate(double x_m, double t_s) const {
        double v_free = component_field(measurements_, params_.c_free_kmh, x_m, t_s);
        double v_cong = component_field(measurements_, params_.c_cong_kmh, x_m, t_s);
        double w = congestion_weight(v_free, v_cong, params_);
        return w * v_cong + (1.0 - w) * v_free;
    }

    SpeedGrid reconstruct_grid(double x0_m, double x1_m, double t0_s, double t1_s,
                               double dx_m, double dt_s,
                               std::size_t cell_budget = kDefaultCellBudget) const {
        if (!(dx_m > 0 && dt_s > 0))
            throw InputError("reconstruct_grid: cell size must be positive");
        if (!(x1_m > x0_m && t1_s > t0_s))
            throw InputError("reconstruct_grid: empty extent");
        SpeedGrid grid;
        grid.x0_m = x0_m;
        grid.t0_s = t0_s;
        grid.dx_m = dx_m;
        grid.dt_s = dt_s;
        grid.nx = std::size_t(std::ceil((x1_m - x0_m) / dx_m));
        grid.nt = std::size_t(std::ceil((t1_s - t0_s) / dt_s));
        if (grid.nx * grid.nt > cell_budget)
            throw InternalError("reconstruct_grid: " +
                                std::to_string(grid.nx * grid.nt) +
                                " cells exceed the budget of " +
                                std::to_string(cell_budget));
        grid.speeds_kmh.resize(grid.nx * grid.nt);
        for (std::size_t ix = 0; ix < grid.nx; ++ix)
            for (std::size_t it = 0; it < grid.nt; ++it)
                grid.speeds_kmh[ix * grid.nt + it] =
                    evaluate(grid.cell_x(ix), grid.cell_t(it));
        return grid;
    }

    // Forward-Euler virtual trajectory through the field.
    Trajectory virtual_trajectory(double departure_s, double origin_m,
                                  double destination_m,
                                  double min_speed_kmh = 1.0,
                                  double stall_timeout_s = 7200.0) const {
        if (!(origin_m < destination_m))
            throw InputError("virtual_trajectory: origin must precede destination");
        double tau_min = measurements_.front().tau_s;
        for (const auto& m : measurements_) tau_min = std::min(tau_min, m.tau_s);
        double step_s = std::min(30.0, tau_min / 4.0);
        Trajectory traj;
        traj.departure_s = departure_s;
        double x = origin_m, t = departure_s, stalled = 0.0;
        traj.path.push_back({x, t});
        while (x < destination_m) {
            double v = evaluate(x, t);
            if (v <= min_speed_kmh) {
                stalled += step_s;
                if (stalled > stall_timeout_s)
                    throw InternalError("virtual_trajectory: stalled below " +
                                        std::to_string(min_speed_kmh) +
                                        " km/h for over " +
                                        std::to_string(stall_timeout_s) + " s");
                v = min_speed_kmh;
            } else {
                stalled = 0.0;
            }
            double v_mps = v / 3.6;
            double remaining = destination_m - x;
            if (v_mps * step_s >= remaining) {
                t += remaining / v_mps;
                x = destination_m;
            } else {
                x += v_mps * step_s;
                t += step_s;
            }
            traj.path.push_back({x, t});
        }
        traj.arrival_s = t;
        return traj;
    }

private:
    std::vector<Measurement> measurements_;
    AsmParams params_;
};

// Measurements for one (route, date): every observed native record becomes
// one point carrying the link's median speed.
inline std::vector<Measurement> measurements_from_dataset(const Dataset& dataset,
                                                          const Route& route,
                                                          const Date& date) {
    std::map<std::string, const Link*> links;
    for (const auto& l : route.links) links[l.id] = &l;
    std::vector<Measurement> out;
    for (const auto& r : dataset.link_records()) {
        if (date_ordinal(r.date) != date_ordinal(date)) continue;
        if (r.sample_size == 0) continue;
        auto it = links.find(r.link_id);
        if (it == links.end()) continue;
        const Link& link = *it->second;
        out.push_back({link.midpoint_m, r.tod.midpoint_s(),
                       r.speed_percentiles_kmh->median(), link.length_m / 2.0,
                       r.tod.width_s() / 2.0});
    }
    return out;
}

} // namespace fcdtt
