// fcdtt: floating-car-data travel time toolkit.
//
// Subcommands: synth (synthetic dataset generation), field (speed-field
// reconstruction), estimate (Monte Carlo travel-time estimation), forecast
// (historical-day forecast vs. same-day reference).
//
// Exit codes: 0 success, 1 usage, 2 input/parse, 3 insufficient data,
// 4 internal.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include <fcdtt/fcdtt.hpp>

namespace {

using namespace fcdtt;

std::unique_ptr<std::ofstream> open_out(const std::string& path,
                                        std::ostream*& os) {
    if (path == "-") {
        os = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw InputError("cannot open '" + path + "' for writing");
    os = file.get();
    return file;
}

std::set<long> parse_exclusions(const std::string& csv) {
    std::set<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(date_ordinal(parse_date(item)));
    return out;
}

struct CommonOpts {
    std::string dataset_path;
    std::string geometry_path;
    std::string route_id = "R1";
    std::string out_path = "-";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--dataset", opts.dataset_path, "dataset records file")
        ->required();
    cmd->add_option("--geometry", opts.geometry_path, "route geometry file")
        ->required();
    cmd->add_option("--route", opts.route_id, "route id")->capture_default_str();
    cmd->add_option("--out", opts.out_path, "output file ('-' = stdout)")->capture_default_str();
}

Route load_route(const CommonOpts& opts) {
    return find_route(load_geometry(opts.geometry_path), opts.route_id);
}

int run(int argc, char** argv) {
    CLI::App app{"floating-car-data travel time toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    std::string scenario_path, synth_records = "dataset.jsonl",
                synth_geometry = "geometry.json";
    std::uint64_t synth_seed = 0;
    synth->add_option("--scenario", scenario_path, "scenario spec (JSON)")
        ->required();
    synth->add_option("--seed", synth_seed, "generator seed")->capture_default_str();
    synth->add_option("--out-records", synth_records, "records output path")->capture_default_str();
    synth->add_option("--out-geometry", synth_geometry, "geometry output path")->capture_default_str();

    // ---- field ----
    auto* field = app.add_subcommand("field", "reconstruct the speed field grid");
    CommonOpts field_opts;
    add_common(field, field_opts);
    std::string field_date;
    AsmParams asm_params;
    double grid_dx = 0.0, grid_dt = 300.0; // dx 0 = median link length
    field->add_option("--date", field_date, "date (YYYY-MM-DD)")->required();
    field->add_option("--c-free", asm_params.c_free_kmh,
                      "free-traffic propagation speed, km/h")->capture_default_str();
    field->add_option("--c-cong", asm_params.c_cong_kmh,
                      "congested-traffic propagation speed, km/h")->capture_default_str();
    field->add_option("--v-c", asm_params.v_c_kmh,
                      "free/congested threshold, km/h")->capture_default_str();
    field->add_option("--delta-v", asm_params.delta_v_kmh,
                      "transition width, km/h")->capture_default_str();
    field->add_option("--dx", grid_dx, "grid cell width, m (0 = median link length)")->capture_default_str();
    field->add_option("--dt", grid_dt, "grid cell height, s")->capture_default_str();

    // ---- estimate ----
    auto* estimate = app.add_subcommand(
        "estimate", "estimate travel-time distributions by trip simulation");
    CommonOpts est_opts;
    add_common(estimate, est_opts);
    std::string est_date, est_departure, est_departure_end;
    std::string est_scheme = "5min";
    SimulationConfig est_config;
    int est_step_s = 1200;
    estimate->add_option("--date", est_date, "date (YYYY-MM-DD)")->required();
    estimate->add_option("--departure", est_departure, "departure time (HH:MM)")
        ->required();
    estimate->add_option("--departure-end", est_departure_end,
                         "sweep end (HH:MM, exclusive)");
    estimate->add_option("--step", est_step_s, "sweep step, seconds")->capture_default_str();
    estimate->add_option("--scheme", est_scheme, "TOD scheme: 5min|20min|demand5")->capture_default_str();
    estimate->add_option("--alpha", est_config.alpha,
                         "inter-link dependence in (0,1]; 1 = independent")
        ->capture_default_str();
    estimate->add_option("--runs", est_config.n_runs, "simulation runs")->capture_default_str();
    estimate->add_option("--seed", est_config.seed, "simulation seed")->capture_default_str();

    // ---- forecast ----
    auto* fore = app.add_subcommand(
        "forecast", "forecast a target departure from historical days");
    CommonOpts fore_opts;
    add_common(fore, fore_opts);
    std::string fore_date, fore_departure, fore_strategy = "prev-week";
    std::string fore_scheme = "5min", fore_exclude, fore_custom_days;
    SimulationConfig fore_config;
    double fore_k = 1.0;
    bool all_strategies = false;
    fore->add_option("--date", fore_date, "target date (YYYY-MM-DD)")->required();
    fore->add_option("--departure", fore_departure, "target departure (HH:MM)")
        ->required();
    fore->add_option("--strategy", fore_strategy,
                     "prev-week|prev-month|prev-3-months|custom")->capture_default_str();
    fore->add_option("--custom-days", fore_custom_days,
                     "comma-separated dates for --strategy custom");
    fore->add_option("--scheme", fore_scheme, "TOD scheme: 5min|20min|demand5")->capture_default_str();
    fore->add_option("--alpha", fore_config.alpha,
                     "inter-link dependence in (0,1]; 1 = independent")
        ->capture_default_str();
    fore->add_option("--runs", fore_config.n_runs, "simulation runs per day")->capture_default_str();
    fore->add_option("--seed", fore_config.seed, "simulation seed")->capture_default_str();
    fore->add_option("--exclude-dates", fore_exclude,
                     "comma-separated dates to exclude (holidays)");
    fore->add_option("--k", fore_k, "overlap criterion width, in forecast stds")->capture_default_str();
    fore->add_flag("--all-strategies", all_strategies,
                   "emit all 3 strategies x 3 schemes");

    CLI11_PARSE(app, argc, argv);

    if (synth->parsed()) {
        ScenarioSpec spec = load_scenario(scenario_path);
        Dataset dataset = generate_synthetic(spec, synth_seed);
        save_dataset(dataset, synth_records);
        save_geometry({spec.route()}, synth_geometry);
        std::cerr << "wrote " << dataset.link_records().size() << " link and "
                  << dataset.route_records().size() << " route records\n";
        return 0;
    }

    if (field->parsed()) {
        Dataset dataset = load_dataset(field_opts.dataset_path);
        Route route = load_route(field_opts);
        dataset.validate_consistency(route);
        Date date = parse_date(field_date);
        auto measurements = measurements_from_dataset(dataset, route, date);
        if (measurements.empty())
            throw InsufficientDataError("no measurements for " + field_date +
                                        " on route " + route.id);
        if (grid_dx <= 0.0) {
            std::vector<double> lengths;
            for (const auto& l : route.links) lengths.push_back(l.length_m);
            std::sort(lengths.begin(), lengths.end());
            grid_dx = lengths[lengths.size() / 2];
        }
        SpeedField sf(measurements, asm_params);
        double t0 = measurements.front().t_s, t1 = t0;
        for (const auto& m : measurements) {
            t0 = std::min(t0, m.t_s - m.tau_s);
            t1 = std::max(t1, m.t_s + m.tau_s);
        }
        SpeedGrid grid = sf.reconstruct_grid(0.0, route.total_length_m, t0, t1,
                                             grid_dx, grid_dt);
        std::ostream* os = nullptr;
        auto file = open_out(field_opts.out_path, os);
        write_grid_report(*os, grid, asm_params);
        return 0;
    }

    if (estimate->parsed()) {
        Dataset dataset = load_dataset(est_opts.dataset_path);
        Route route = load_route(est_opts);
        dataset.validate_consistency(route);
        Date date = parse_date(est_date);
        TodScheme scheme = make_scheme(est_scheme);
        int dep0 = parse_time_of_day(est_departure);
        int dep1 = est_departure_end.empty() ? dep0 + 1
                                             : parse_time_of_day(est_departure_end);
        if (est_step_s <= 0) throw UsageError("--step must be positive");

        std::ostream* os = nullptr;
        auto file = open_out(est_opts.out_path, os);
        write_estimate_header(*os);
        for (int dep = dep0; dep < dep1; dep += est_step_s) {
            EstimateResult est;
            if (scheme.route_level()) {
                std::vector<RouteRecord> records;
                for (const auto& r : dataset.route_records())
                    if (date_ordinal(r.date) == date_ordinal(date) &&
                        r.route_id == route.id)
                        records.push_back(r);
                est = route_based_estimate(records, route, dep, est_config.n_runs,
                                           est_config.seed);
                if (est.short_interval_warning)
                    std::cerr << "warning: TOD interval at " << dep
                              << " s is shorter than the route's free-flow time; "
                                 "route-level sampling is biased\n";
            } else {
                TravelTimeMatrix matrix = build_matrix(dataset, route, scheme, {date});
                est = estimate_distribution(matrix, dep, est_config);
            }
            write_estimate_row(*os, dep, scheme.name, est_config.alpha, est);
        }
        return 0;
    }

    if (fore->parsed()) {
        Dataset dataset = load_dataset(fore_opts.dataset_path);
        Route route = load_route(fore_opts);
        dataset.validate_consistency(route);
        Date target = parse_date(fore_date);
        int departure = parse_time_of_day(fore_departure);

        HistoryStrategy strategy;
        strategy.kind = history_kind_from_name(fore_strategy);
        strategy.exclusions = parse_exclusions(fore_exclude);
        if (strategy.kind == HistoryKind::Custom) {
            std::stringstream ss(fore_custom_days);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) strategy.custom_dates.push_back(parse_date(item));
        }

        std::vector<std::string> scheme_names =
            all_strategies ? std::vector<std::string>{"5min", "20min", "demand5"}
                           : std::vector<std::string>{fore_scheme};
        std::vector<HistoryKind> kinds =
            all_strategies
                ? std::vector<HistoryKind>{HistoryKind::PrevWeek,
                                           HistoryKind::PrevMonth,
                                           HistoryKind::Prev3Months}
                : std::vector<HistoryKind>{strategy.kind};

        std::ostream* os = nullptr;
        auto file = open_out(fore_opts.out_path, os);
        *os << "# target " << format_date(target) << " " << fore_departure
            << " alpha " << fore_config.alpha << " runs " << fore_config.n_runs
            << " seed " << fore_config.seed << '\n';

        // reference rows: the target day's own data, every scheme requested
        std::vector<ForecastTableRow> rows;
        std::map<std::string, EstimateResult> references;
        for (const auto& sname : scheme_names) {
            TodScheme scheme = make_scheme(sname);
            EstimateResult ref = reference_estimate(dataset, route, target,
                                                    departure, scheme, fore_config);
            references[sname] = ref;
            rows.push_back({"reference", 1, sname, ref.summary.mean / 60.0,
                            ref.summary.std / 60.0, ref.fcd_sample_size});
        }

        std::vector<std::pair<std::string, Forecast>> forecasts;
        for (auto kind : kinds) {
            HistoryStrategy s = strategy;
            s.kind = kind;
            for (const auto& sname : scheme_names) {
                TodScheme scheme = make_scheme(sname);
                Forecast fc = forecast(dataset, route, target, departure, s,
                                       scheme, fore_config);
                rows.push_back({fc.strategy_name, fc.historical_days.size(), sname,
                                fc.summary.mean / 60.0, fc.summary.std / 60.0,
                                fc.fcd_sample_size});
                forecasts.emplace_back(sname, std::move(fc));
            }
        }
        *os << "# historical days used:";
        for (const auto& d : forecasts.front().second.historical_days)
            *os << ' ' << format_date(d);
        *os << '\n';
        write_forecast_table(*os, rows);

        // comparisons: the finest-scheme reference is treated as the best
        // available estimate and every forecast is scored against it
        const EstimateResult& ref = references.count("5min")
                                        ? references.at("5min")
                                        : references.begin()->second;
        for (const auto& [sname, fc] : forecasts) {
            *os << "# comparison " << fc.strategy_name << " " << sname << '\n';
            write_comparison(*os, compare(ref.summary, fc.summary, fore_k));
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fcdtt::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const fcdtt::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const fcdtt::InsufficientDataError& e) {
        std::cerr << "insufficient data: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
}
