#include <catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace fcdtt;
using namespace fcdtt_test;

namespace {

const std::vector<Date> kMondays = {
    parse_date("2016-02-01"), parse_date("2016-02-08"), parse_date("2016-02-15"),
    parse_date("2016-02-22"), parse_date("2016-02-29")};

ScenarioSpec monday_scenario() {
    ScenarioSpec spec;
    for (std::size_t i = 0; i < 8; ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "L%03zu", i);
        spec.link_specs.emplace_back(id, 1500.0, 120.0);
    }
    spec.dates = kMondays;
    spec.free_flow_speed_kmh = 95.0;
    spec.relative_spread = 0.15;
    spec.median_noise_kmh = 2.0;
    return spec;
}

} // namespace

TEST_CASE("select_historical_days matches the calendar anchors") {
    Date target = parse_date("2016-02-29"); // a Monday
    std::vector<Date> available = kMondays;
    available.push_back(parse_date("2016-02-23")); // a Tuesday, must be ignored

    HistoryStrategy strategy;
    strategy.kind = HistoryKind::PrevWeek;
    auto days = select_historical_days(target, strategy, available);
    REQUIRE(days.size() == 1);
    CHECK(format_date(days[0]) == "2016-02-22");

    strategy.kind = HistoryKind::PrevMonth;
    days = select_historical_days(target, strategy, available);
    REQUIRE(days.size() == 4);
    CHECK(format_date(days[0]) == "2016-02-22");
    CHECK(format_date(days[1]) == "2016-02-15");
    CHECK(format_date(days[2]) == "2016-02-08");
    CHECK(format_date(days[3]) == "2016-02-01");

    // holiday exclusion removes 8 Feb, leaving three days
    strategy.exclusions = {date_ordinal(parse_date("2016-02-08"))};
    days = select_historical_days(target, strategy, available);
    REQUIRE(days.size() == 3);
    for (const auto& d : days) CHECK(format_date(d) != "2016-02-08");

    // weekday lock holds on every selected day
    for (const auto& d : days)
        CHECK(weekday_of(d) == weekday_of(target));
}

TEST_CASE("select_historical_days errors when nothing qualifies") {
    HistoryStrategy strategy;
    strategy.kind = HistoryKind::PrevWeek;
    CHECK_THROWS_AS(select_historical_days(parse_date("2016-02-01"), strategy,
                                           {parse_date("2016-02-08")}),
                    InsufficientDataError);
    CHECK_THROWS_AS(select_historical_days(parse_date("2016-02-01"), strategy, {}),
                    InsufficientDataError);
}

TEST_CASE("single-day forecast equals that day's estimate") {
    Dataset ds = generate_synthetic(monday_scenario(), 17);
    Route route = monday_scenario().route();
    SimulationConfig cfg{1.0, 200, 5};
    TodScheme scheme = make_scheme("5min");

    HistoryStrategy strategy;
    strategy.kind = HistoryKind::PrevWeek;
    Forecast fc = forecast(ds, route, parse_date("2016-02-29"), 8 * 3600, strategy,
                           scheme, cfg);
    REQUIRE(fc.historical_days.size() == 1);

    auto matrix = build_matrix(ds, route, scheme, {parse_date("2016-02-22")});
    auto est = estimate_distribution(matrix, 8 * 3600, cfg);
    CHECK(fc.samples_s == est.samples_s);
    CHECK(fc.summary.mean == est.summary.mean);
}

TEST_CASE("pooled forecast statistics") {
    Dataset ds = generate_synthetic(monday_scenario(), 17);
    Route route = monday_scenario().route();
    SimulationConfig cfg{1.0, 150, 5};
    TodScheme scheme = make_scheme("20min");

    HistoryStrategy strategy;
    strategy.kind = HistoryKind::PrevMonth;
    Forecast fc = forecast(ds, route, parse_date("2016-02-29"), 8 * 3600, strategy,
                           scheme, cfg);
    REQUIRE(fc.historical_days.size() == 4);

    SECTION("sample count grows linearly with historical days") {
        CHECK(fc.samples_s.size() == 4 * cfg.n_runs);
    }

    SECTION("pooled mean is the per-day sample-weighted average") {
        double acc = 0.0;
        for (const auto& day : fc.historical_days) {
            auto matrix = build_matrix(ds, route, scheme, {day});
            acc += estimate_distribution(matrix, 8 * 3600, cfg).summary.mean;
        }
        CHECK(fc.summary.mean == Catch::Approx(acc / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("route-level scheme forecasts via the route records") {
    Dataset ds = generate_synthetic(monday_scenario(), 17);
    Route route = monday_scenario().route();
    SimulationConfig cfg{1.0, 100, 5};

    HistoryStrategy strategy;
    strategy.kind = HistoryKind::PrevWeek;
    Forecast fc = forecast(ds, route, parse_date("2016-02-29"), 8 * 3600, strategy,
                           make_scheme("demand5"), cfg);
    CHECK(fc.samples_s.size() == cfg.n_runs);
    CHECK(fc.summary.mean > 0.0);
}

TEST_CASE("reference equals a custom forecast on the target date") {
    Dataset ds = generate_synthetic(monday_scenario(), 17);
    Route route = monday_scenario().route();
    SimulationConfig cfg{1.0, 100, 5};
    TodScheme scheme = make_scheme("5min");
    Date target = parse_date("2016-02-29");

    auto ref = reference_estimate(ds, route, target, 8 * 3600, scheme, cfg);

    HistoryStrategy custom;
    custom.kind = HistoryKind::Custom;
    custom.custom_dates = {target};
    Forecast fc = forecast(ds, route, target, 8 * 3600, custom, scheme, cfg);
    CHECK(fc.samples_s == ref.samples_s);

    CHECK_THROWS_AS(reference_estimate(ds, route, parse_date("2017-01-02"),
                                       8 * 3600, scheme, cfg),
                    InsufficientDataError);
}

TEST_CASE("compare") {
    SECTION("identical summaries") {
        SampleSummary s;
        s.mean = 1800.0;
        s.std = 30.0;
        auto rep = compare(s, s, 1.0);
        CHECK(rep.mean_error_s == 0.0);
        CHECK(rep.z_score == 0.0);
        CHECK(rep.overlap);
    }

    SECTION("values from the forecast table anchors") {
        // minutes are fine here, the comparison is unit-agnostic
        SampleSummary ref;
        ref.mean = 31.63;
        SampleSummary close;
        close.mean = 31.66;
        close.std = 0.73;
        auto rep = compare(ref, close, 1.0);
        CHECK(rep.z_score == Catch::Approx(0.041).margin(0.002));
        CHECK(rep.overlap);

        SampleSummary far;
        far.mean = 29.22;
        far.std = 0.79;
        rep = compare(ref, far, 1.0);
        CHECK(rep.z_score == Catch::Approx(3.05).margin(0.01));
        CHECK_FALSE(rep.overlap);
    }

    SECTION("zero forecast std with nonzero error") {
        SampleSummary ref;
        ref.mean = 100.0;
        SampleSummary fc;
        fc.mean = 105.0;
        fc.std = 0.0;
        auto rep = compare(ref, fc, 1.0);
        CHECK(std::isinf(rep.z_score));
        CHECK_FALSE(rep.overlap);
    }
}
