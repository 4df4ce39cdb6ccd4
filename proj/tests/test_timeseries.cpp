#include <doctest.h>

#include <cmath>
#include <sstream>

#include "heatcurve/errors.hpp"
#include "heatcurve/timeseries.hpp"

using namespace heatcurve;

TEST_CASE("timestamp parsing: epoch forms") {
    CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_timestamp("1970-01-01") == 0);
    CHECK(parse_timestamp("1970-01-01T00:10") == 600);
    CHECK(parse_timestamp("2021-02-01T00:00:00Z") == 1612137600);
    CHECK(parse_timestamp("2021-02-01 00:00:00") == 1612137600); // space separator, zone-less = UTC
    CHECK(parse_timestamp("2021-02-01T01:00:00+01:00") == 1612137600);
    CHECK(parse_timestamp("2021-01-31T23:00:00-01:00") == 1612137600);
    CHECK(parse_timestamp("2021-02-01T01:00:00+0100") == 1612137600);
    CHECK(parse_timestamp("2021-02-01T00:00:12.9Z") == 1612137612); // fraction truncates
    CHECK(parse_timestamp("2020-02-29") == parse_timestamp("2020-02-28") + 86400);
    CHECK(parse_timestamp("1969-12-31T23:50:00Z") == -600);
}

TEST_CASE("timestamp parsing: rejects malformed input") {
    CHECK_THROWS_AS(parse_timestamp(""), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-13-01"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-02-30"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-2-1"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-02-01T25:00"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-02-01T00:61"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-02-01X00:00"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2021-02-01T00:00:00Zjunk"), DataError);
    CHECK_THROWS_AS(parse_timestamp("not a date"), DataError);
}

TEST_CASE("timestamp formatting round-trips") {
    for (Timestamp t : {Timestamp{0}, Timestamp{1612137600}, Timestamp{-600},
                        Timestamp{951782400} /* 2000-02-29 */, Timestamp{4102444799}}) {
        CHECK(parse_timestamp(format_timestamp(t)) == t);
    }
    CHECK(format_timestamp(1612137600) == "2021-02-01T00:00:00Z");
}

TEST_CASE("interval_of_day") {
    CHECK(interval_of_day(0) == 0);
    CHECK(interval_of_day(599) == 0);
    CHECK(interval_of_day(600) == 1);
    CHECK(interval_of_day(86400 - 1) == 143);
    CHECK(interval_of_day(86400) == 0);
    CHECK(interval_of_day(-1) == 143);           // floor-mod, not trunc
    CHECK(interval_of_day(0, 60) == 6);          // +1 h local offset
    CHECK(interval_of_day(0, -60) == 138);
}

TEST_CASE("parse_series: single row") {
    std::istringstream in("timestamp,value\n2021-02-01T00:00:00Z,5.5\n");
    RawSeries s = parse_series(in, SeriesKind::heat_power_kW);
    REQUIRE(s.size() == 1);
    CHECK(s.t[0] == 1612137600);
    CHECK(s.v[0] == 5.5);
}

TEST_CASE("parse_series: duplicate timestamps keep the last occurrence") {
    std::istringstream in(
        "timestamp,value\n"
        "2021-02-01T00:00:00Z,1\n"
        "2021-02-01T00:10:00Z,2\n"
        "2021-02-01T00:00:00Z,3\n");
    RawSeries s = parse_series(in, SeriesKind::heat_power_kW);
    REQUIRE(s.size() == 2);
    CHECK(s.v[0] == 3.0);
    CHECK(s.v[1] == 2.0);
    CHECK(s.t[0] < s.t[1]);
}

TEST_CASE("parse_series: errors carry the line number") {
    std::istringstream in("timestamp,value\n2021-02-01T00:00:00Z,oops\n");
    try {
        parse_series(in, SeriesKind::heat_power_kW);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("parse_series: header and emptiness checks") {
    {
        std::istringstream in("");
        CHECK_THROWS_AS(parse_series(in, SeriesKind::heat_power_kW), DataError);
    }
    {
        std::istringstream in("time,power\n2021-02-01,1\n");
        CHECK_THROWS_AS(parse_series(in, SeriesKind::heat_power_kW), DataError);
    }
    {
        std::istringstream in("timestamp,value\n");
        CHECK_THROWS_AS(parse_series(in, SeriesKind::heat_power_kW), DataError);
    }
}

TEST_CASE("parse_series: negative power policy") {
    const char* csv = "timestamp,value\n2021-02-01T00:00:00Z,-0.4\n";
    {
        std::istringstream in(csv);
        CHECK_THROWS_AS(parse_series(in, SeriesKind::heat_power_kW), DataError);
    }
    {
        std::istringstream in(csv);
        RawSeries s = parse_series(in, SeriesKind::heat_power_kW, NegativePolicy::clamp_to_zero);
        CHECK(s.v[0] == 0.0);
    }
    {
        // negative outdoor temperatures are plain data, not an error
        std::istringstream in(csv);
        RawSeries s = parse_series(in, SeriesKind::outdoor_temp_C);
        CHECK(s.v[0] == -0.4);
    }
}

TEST_CASE("parse_series: CRLF and blank lines tolerated") {
    std::istringstream in("timestamp,value\r\n\r\n2021-02-01T00:00:00Z,1.25\r\n");
    RawSeries s = parse_series(in, SeriesKind::heat_power_kW);
    REQUIRE(s.size() == 1);
    CHECK(s.v[0] == 1.25);
}

namespace {

RawSeries make_series(SeriesKind kind, Timestamp t0, Timestamp step,
                      const std::vector<double>& vals) {
    RawSeries s;
    s.kind = kind;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        s.t.push_back(t0 + static_cast<Timestamp>(i) * step);
        s.v.push_back(vals[i]);
    }
    return s;
}

} // namespace

TEST_CASE("align: constant full day gives 144 equal intervals") {
    // demand sampled every 10 min for 24 h, weather hourly
    std::vector<double> dv(145, 7.0);
    RawSeries demand = make_series(SeriesKind::heat_power_kW, 1612137600, 600, dv);
    std::vector<double> wv(25, -2.0);
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600, 3600, wv);

    AlignReport rep;
    AlignedSeries a = align(demand, weather, &rep);
    REQUIRE(a.size() == 145);
    CHECK(a.start == 1612137600);
    int full_day = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) { // first 144 = the civil day
        CHECK(a.demand_kW[i] == 7.0);
        CHECK(a.t_out_C[i] == -2.0);
        ++full_day;
    }
    CHECK(full_day == 144);
    CHECK(rep.missing_demand == 0);
    CHECK(rep.demand_samples == 145);
}

TEST_CASE("align: gaps stay missing, never zero") {
    // 6 h of data, 3 h hole in the middle => 18 missing intervals
    RawSeries demand;
    demand.kind = SeriesKind::heat_power_kW;
    for (int i = 0; i <= 36; ++i) {
        if (i > 6 && i < 25) continue; // 01:10..04:00 hole, 18 intervals
        demand.t.push_back(1612137600 + i * 600);
        demand.v.push_back(3.0);
    }
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600, 3600,
                                    std::vector<double>(7, 0.0));
    AlignedSeries a = align(demand, weather);
    int missing = 0;
    for (double v : a.demand_kW)
        if (is_missing(v)) ++missing;
    CHECK(missing == 18);
    for (double v : a.demand_kW)
        CHECK(v != 0.0); // the hole must not read as zero demand
}

TEST_CASE("align: multiple samples in one interval average") {
    RawSeries demand;
    demand.kind = SeriesKind::heat_power_kW;
    demand.t = {1612137600, 1612137800, 1612138000, 1612138200};
    demand.v = {2.0, 4.0, 9.0, 1.0};
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600, 600,
                                    {0.0, 0.0});
    AlignedSeries a = align(demand, weather);
    REQUIRE(a.size() == 2);
    CHECK(a.demand_kW[0] == doctest::Approx(5.0)); // (2+4+9)/3
}

TEST_CASE("align: weather interpolates linearly at interval starts") {
    RawSeries demand = make_series(SeriesKind::heat_power_kW, 1612137600, 600,
                                   std::vector<double>(7, 1.0));
    RawSeries weather;
    weather.kind = SeriesKind::outdoor_temp_C;
    weather.t = {1612137600, 1612137600 + 3600};
    weather.v = {0.0, 6.0};
    AlignedSeries a = align(demand, weather);
    REQUIRE(a.size() == 7);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.t_out_C[i] == doctest::Approx(static_cast<double>(i)));
}

TEST_CASE("align: grid snaps up to the next 10-minute boundary") {
    RawSeries demand = make_series(SeriesKind::heat_power_kW, 1612137600 + 123, 600,
                                   std::vector<double>(5, 1.0));
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600, 3600,
                                    {0.0, 0.0});
    AlignedSeries a = align(demand, weather);
    CHECK(a.start == 1612138200);
    CHECK(a.start % 600 == 0);
}

TEST_CASE("align: disjoint ranges raise a data error") {
    RawSeries demand = make_series(SeriesKind::heat_power_kW, 1612137600, 600,
                                   {1.0, 1.0});
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600 + 86400 * 7,
                                    3600, {0.0, 0.0});
    CHECK_THROWS_AS(align(demand, weather), DataError);
}

TEST_CASE("align: report counts samples outside the grid") {
    RawSeries demand = make_series(SeriesKind::heat_power_kW, 1612137600 - 1200, 600,
                                   std::vector<double>(6, 1.0));
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600, 3600,
                                    {0.0, 0.0});
    AlignReport rep;
    align(demand, weather, &rep);
    CHECK(rep.demand_samples_outside == 2);
    CHECK(rep.demand_samples == 4);
}

TEST_CASE("align_temperature covers the series' own span") {
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 1612137600, 3600,
                                    {0.0, 3.0, 6.0});
    AlignedSeries a = align_temperature(weather);
    REQUIRE(a.size() == 13);
    CHECK(is_missing(a.demand_kW[0]));
    CHECK(a.t_out_C[6] == doctest::Approx(3.0));
}

TEST_CASE("slice keeps the half-open window") {
    RawSeries demand = make_series(SeriesKind::heat_power_kW, 0, 600,
                                   {0, 1, 2, 3, 4, 5});
    RawSeries weather = make_series(SeriesKind::outdoor_temp_C, 0, 600,
                                    {0, 0, 0, 0, 0, 0});
    AlignedSeries a = align(demand, weather);
    AlignedSeries cut = slice(a, 600, 1800);
    REQUIRE(cut.size() == 2);
    CHECK(cut.start == 600);
    CHECK(cut.demand_kW[0] == 1.0);
    CHECK(cut.demand_kW[1] == 2.0);
}

TEST_CASE("aligned_to_csv leaves missing fields empty") {
    AlignedSeries a;
    a.start = 0;
    a.demand_kW = {1.5, kMissing};
    a.t_out_C = {-0.5, 2.0};
    CHECK(aligned_to_csv(a) ==
          "timestamp,demand_kW,t_out_C\n"
          "1970-01-01T00:00:00Z,1.5,-0.5\n"
          "1970-01-01T00:10:00Z,,2\n");
}
