#include <catch_amalgamated.hpp>

#include <sstream>

#include "test_helpers.hpp"

using namespace fcdtt;
using namespace fcdtt_test;

namespace {

LinkRecord make_record(const std::string& link_id, const std::string& date,
                       int tod_start, double median_kmh, double length_m = 1000.0,
                       std::size_t sample_size = 5) {
    LinkRecord r;
    r.link_id = link_id;
    r.date = parse_date(date);
    r.tod = {tod_start, tod_start + 300};
    r.sample_size = sample_size;
    r.speed_limit_kmh = 120.0;
    PercentileDistribution sp;
    sp.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        sp.values[k] = median_kmh * (1.0 + 0.05 * (percentile_level(k) - 0.5) / 0.45);
    r.speed_percentiles_kmh = sp;
    PercentileDistribution tt;
    tt.values.resize(kPercentileCount);
    for (std::size_t k = 0; k < kPercentileCount; ++k)
        tt.values[k] = length_m / (sp.values[kPercentileCount - 1 - k] / 3.6);
    r.travel_time_percentiles_s = tt;
    return r;
}

} // namespace

TEST_CASE("route geometry invariants") {
    auto route = make_route("R1", {{"A", 1000, 100}, {"B", 2000, 80}, {"C", 500, 50}});
    CHECK(route.total_length_m == 3500.0);
    CHECK(route.links[0].midpoint_m == 500.0);
    CHECK(route.links[1].midpoint_m == 2000.0);
    CHECK(route.links[2].midpoint_m == 3250.0);
    CHECK_THROWS_AS(make_route("bad", {{"A", -5, 100}}), InputError);
    CHECK_THROWS_AS(make_route("empty", {}), InputError);
}

TEST_CASE("tod schemes have the documented interval counts") {
    CHECK(make_scheme("5min").intervals.size() == 288);
    CHECK(make_scheme("20min").intervals.size() == 72);
    auto demand = make_scheme("demand5");
    REQUIRE(demand.intervals.size() == 5);
    // contiguous cover of the day
    CHECK(demand.intervals.front().start_s == 0);
    CHECK(demand.intervals.back().end_s == kSecondsPerDay);
    for (std::size_t i = 1; i < 5; ++i)
        CHECK(demand.intervals[i].start_s == demand.intervals[i - 1].end_s);
    CHECK_THROWS_AS(make_scheme("7min"), UsageError);
}

TEST_CASE("record invariants") {
    auto r = make_record("L1", "2016-02-01", 3600, 80.0);
    CHECK_NOTHROW(r.validate());
    CHECK_NOTHROW(r.validate_consistency(1000.0));
    // wrong length breaks the speed/travel-time cross check
    CHECK_THROWS_AS(r.validate_consistency(2000.0), InputError);

    LinkRecord empty;
    empty.link_id = "L1";
    empty.date = parse_date("2016-02-01");
    empty.tod = {0, 300};
    empty.sample_size = 0;
    CHECK_NOTHROW(empty.validate());
    empty.speed_percentiles_kmh = linear_dist(10, 20);
    CHECK_THROWS_AS(empty.validate(), InputError);
}

TEST_CASE("query filters by date range, weekday and TOD") {
    Dataset ds;
    // four Mondays of February 2016 plus one Tuesday
    for (const char* d : {"2016-02-01", "2016-02-08", "2016-02-15", "2016-02-22",
                          "2016-02-02"})
        ds.add(make_record("L1", d, 8 * 3600, 70.0));
    ds.finalize();

    FcdQuery q;
    q.date_from = parse_date("2016-02-01");
    q.date_to = parse_date("2016-02-29");
    q.days_of_week = {1}; // Monday
    q.tod = {0, kSecondsPerDay};

    auto mondays = ds.query_links(q);
    CHECK(mondays.size() == 4);

    q.days_of_week = {0}; // Sunday: none present
    CHECK(ds.query_links(q).empty());

    q.days_of_week = all_weekdays();
    q.tod = {9 * 3600, 10 * 3600}; // no overlap with 08:00 records
    CHECK(ds.query_links(q).empty());

    q.tod = {8 * 3600 + 200, 8 * 3600 + 250}; // inside the record interval
    CHECK(ds.query_links(q).size() == 5);
}

TEST_CASE("query matches a brute-force scan") {
    RandomStream rng(17);
    Dataset ds;
    const char* dates[] = {"2016-02-01", "2016-02-02", "2016-02-07", "2016-02-14"};
    for (const char* d : dates)
        for (int j = 0; j < 24; ++j)
            ds.add(make_record(j % 2 ? "L1" : "L2", d, j * 3600, 60.0 + j));
    ds.finalize();

    FcdQuery q;
    q.date_from = parse_date("2016-02-02");
    q.date_to = parse_date("2016-02-10");
    q.days_of_week = {0, 2}; // Sunday, Tuesday
    q.tod = {5 * 3600, 11 * 3600};

    auto result = ds.query_links(q);
    std::size_t expected = 0;
    for (const auto& r : ds.link_records())
        if (q.matches_date(r.date) && r.tod.overlaps(q.tod)) ++expected;
    CHECK(result.size() == expected);
    CHECK(expected > 0);
    // pure filter: every result is present in the dataset
    for (const auto& r : result)
        CHECK(std::count(ds.link_records().begin(), ds.link_records().end(), r) == 1);
}

TEST_CASE("full traversal flag filters records") {
    Dataset ds;
    auto a = make_record("L1", "2016-02-01", 0, 50.0);
    a.full_traversal = true;
    ds.add(a);
    ds.add(make_record("L1", "2016-02-01", 300, 50.0));
    ds.finalize();

    FcdQuery q;
    q.date_from = q.date_to = parse_date("2016-02-01");
    q.days_of_week = all_weekdays();
    CHECK(ds.query_links(q).size() == 2);
    q.full_traversal = true;
    CHECK(ds.query_links(q).size() == 1);
}

TEST_CASE("dataset save/load round-trip") {
    Dataset ds;
    ds.add(make_record("L1", "2016-02-01", 3600, 80.0));
    ds.add(make_record("L2", "2016-02-01", 3600, 90.0));
    RouteRecord rr;
    rr.route_id = "R1";
    rr.date = parse_date("2016-02-01");
    rr.tod = {0, 23400};
    rr.sample_size = 50;
    rr.travel_time_percentiles_s = linear_dist(1500, 2100);
    ds.add(rr);
    ds.finalize();

    std::stringstream buf;
    save_dataset(ds, buf);
    Dataset loaded = load_dataset(buf, "<buffer>");
    CHECK(loaded == ds);
}

TEST_CASE("empty dataset file loads to an empty dataset") {
    std::stringstream buf("");
    Dataset ds = load_dataset(buf);
    CHECK(ds.link_records().empty());
    CHECK(ds.distinct_link_count() == 0);
}

TEST_CASE("parse errors carry the line number") {
    std::stringstream buf("{\"record_kind\":\"link\"}\n");
    CHECK_THROWS_WITH(load_dataset(buf, "f"), Catch::Matchers::ContainsSubstring("f:1"));

    std::stringstream buf2(
        "{\"record_kind\":\"bogus\",\"date\":\"2016-01-01\"}\n");
    CHECK_THROWS_AS(load_dataset(buf2), InputError);
}
