#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "test_helpers.hpp"

using namespace fcdtt;
using namespace fcdtt_test;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is);
    std::stringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("forecast table layout matches the stored fixture") {
    // 3 strategies x 3 schemes plus the reference block; the numbers are
    // formatting inputs only
    std::vector<ForecastTableRow> rows = {
        {"reference", 1, "5min", 31.63, 0.20, 2},
        {"reference", 1, "20min", 31.55, 0.51, 5},
        {"reference", 1, "demand5", 31.91, 4.67, 50},
        {"prev-week", 1, "5min", 29.22, 0.79, 2},
        {"prev-week", 1, "20min", 31.66, 0.73, 5},
        {"prev-week", 1, "demand5", 37.16, 10.56, 50},
        {"prev-month", 4, "5min", 30.92, 0.38, 5},
        {"prev-month", 4, "20min", 32.05, 0.74, 20},
        {"prev-month", 4, "demand5", 34.53, 7.37, 200},
        {"prev-3-months", 12, "5min", 32.74, 1.04, 20},
        {"prev-3-months", 12, "20min", 33.12, 1.39, 20},
        {"prev-3-months", 12, "demand5", 34.19, 7.21, 500},
    };
    std::stringstream out;
    write_forecast_table(out, rows);
    CHECK(out.str() ==
          read_file(std::string(FCDTT_TEST_DATA_DIR) + "/forecast_table_fixture.tsv"));
}

TEST_CASE("grid report echoes the parameters and emits one row per cell") {
    std::vector<Measurement> ms = {{500, 150, 100, 500, 150}};
    SpeedField field(ms, AsmParams{});
    auto grid = field.reconstruct_grid(0, 1000, 0, 600, 500, 300);
    std::stringstream out;
    write_grid_report(out, grid, field.params());
    std::string text = out.str();
    CHECK(text.find("# c_free_kmh 70") != std::string::npos);
    CHECK(text.find("# c_cong_kmh -15") != std::string::npos);
    CHECK(text.find("# v_c_kmh 50") != std::string::npos);
    CHECK(text.find("# delta_v_kmh 10") != std::string::npos);
    CHECK(text.find("x_m\tt_s\tspeed_kmh") != std::string::npos);
    std::size_t rows = 0;
    for (char c : text)
        if (c == '\n') ++rows;
    CHECK(rows == 5 + grid.nx * grid.nt);
}

TEST_CASE("estimate report rows carry the full percentile set") {
    std::stringstream out;
    write_estimate_header(out);
    EstimateResult est;
    est.samples_s = {1000, 1100, 1200};
    est.summary = summarize(est.samples_s);
    write_estimate_row(out, 30600, "5min", 1.0, est);
    std::string text = out.str();
    CHECK(text.find("departure_time_s\tscheme\talpha\tmean_tt_s\tstd_tt_s\tp5\t") !=
          std::string::npos);
    CHECK(text.find("p95") != std::string::npos);
    CHECK(text.find("30600\t5min\t1\t1100.000\t") != std::string::npos);
}

TEST_CASE("comparison report formatting") {
    SampleSummary ref, fc;
    ref.mean = 1897.8; // 31.63 min
    fc.mean = 1899.6;
    fc.std = 43.8;
    std::stringstream out;
    write_comparison(out, compare(ref, fc, 1.0));
    std::string text = out.str();
    CHECK(text.find("overlap\ttrue") != std::string::npos);
    CHECK(text.find("z_score\t0.041") != std::string::npos);
}
