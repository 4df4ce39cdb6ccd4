#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "heatcurve/curve.hpp"
#include "heatcurve/errors.hpp"

using namespace heatcurve;

namespace {

HeaterState state(std::string id, double t_sup) {
    HeaterState s;
    s.heater_id = std::move(id);
    s.room_id = "r";
    s.t_sup_required_C = t_sup;
    return s;
}

Heatcurve curve_from(std::vector<std::pair<double, double>> pts, int cluster = 0) {
    Heatcurve c;
    c.cluster = cluster;
    for (auto& [t_out, t_sup] : pts) {
        CurvePoint p;
        p.t_out_C = t_out;
        p.t_sup_C = t_sup;
        p.provenance = PointProvenance::computed;
        p.limiting_heater = "h";
        c.points.push_back(p);
    }
    return c;
}

} // namespace

TEST_CASE("aggregate: singleton, max, lexicographic tie-break") {
    CHECK(aggregate({state("a", 55.0)}, 0.0).t_sup_C == 55.0);

    auto p = aggregate({state("a", 48.0), state("b", 61.0), state("c", 53.0)}, -3.0);
    CHECK(p.t_sup_C == 61.0);
    CHECK(p.limiting_heater == "b");
    CHECK(p.t_out_C == -3.0);
    CHECK(p.provenance == PointProvenance::computed);

    auto tie = aggregate({state("zz", 50.0), state("aa", 50.0), state("mm", 50.0)}, 0.0);
    CHECK(tie.limiting_heater == "aa");

    CHECK_THROWS_AS(aggregate({}, 0.0), ConfigError);
}

TEST_CASE("verify_hallway_assumption") {
    Heatcurve c = curve_from({{-5, 60}, {0, 55}, {5, 52}});

    HallwayCheck pass = verify_hallway_assumption(c, 45.0);
    CHECK(pass.pass);
    CHECK(pass.curve_min_C == 52.0);
    CHECK(pass.violating_bins.empty());

    HallwayCheck boundary = verify_hallway_assumption(c, 52.0);
    CHECK(boundary.pass); // <= convention

    HallwayCheck fail = verify_hallway_assumption(c, 56.0);
    CHECK(!fail.pass);
    REQUIRE(fail.violating_bins.size() == 2);
    CHECK(fail.violating_bins[0] == 0.0);
    CHECK(fail.violating_bins[1] == 5.0);
}

TEST_CASE("savitzky_golay: exact on polynomials up to the polyorder") {
    std::vector<double> y(25);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double x = static_cast<double>(i);
        y[i] = 3.0 - 0.4 * x + 0.02 * x * x;
    }
    auto s = savitzky_golay(y, 7, 2);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(std::abs(s[i] - y[i]) < 1e-9); // including the truncated edges

    std::vector<double> lin(9);
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = 5.0 + 2.0 * static_cast<double>(i);
    auto sl = savitzky_golay(lin, 5, 1);
    for (std::size_t i = 0; i < lin.size(); ++i)
        CHECK(std::abs(sl[i] - lin[i]) < 1e-9);
}

TEST_CASE("savitzky_golay: attenuates an isolated spike") {
    std::vector<double> y(21);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 40.0 - 0.5 * static_cast<double>(i);
    y[10] += 10.0;
    auto s = savitzky_golay(y, 7, 2);
    // center weight of the (7,2) kernel is 7/21, so the spike keeps 10/3 K
    CHECK(s[10] - (40.0 - 5.0) == doctest::Approx(10.0 * 7.0 / 21.0).epsilon(1e-9));
    CHECK(s[10] - (40.0 - 5.0) < 4.0);
}

TEST_CASE("savitzky_golay: parameter validation") {
    std::vector<double> y(10, 1.0);
    CHECK_THROWS_AS(savitzky_golay(y, 6, 2), ConfigError);  // even window
    CHECK_THROWS_AS(savitzky_golay(y, 5, 5), ConfigError);  // order >= window
    CHECK_THROWS_AS(savitzky_golay(y, -1, 0), ConfigError);
}

TEST_CASE("postprocess: fill contract with smoothing skipped") {
    // 5 computed points < window 7 -> fills and offset only, plus a warning
    Heatcurve c = curve_from({{-7, 62}, {-2, 57}, {3, 52}, {9, 46}, {15, 40}});
    PostprocessOptions opt;
    opt.floor_t_sup_C = 21.0;
    std::vector<std::string> warnings;
    Heatcurve out = postprocess(c, opt, &warnings);

    REQUIRE(out.points.size() == 36); // -15..20
    REQUIRE(!warnings.empty());
    CHECK(warnings[0].find("smoothing skipped") != std::string::npos);

    auto at = [&](double t) -> const CurvePoint& {
        for (const auto& p : out.points)
            if (p.t_out_C == t) return p;
        FAIL("missing bin");
        return out.points[0];
    };
    for (double t = -15; t <= -8; t += 1) {
        CHECK(at(t).t_sup_C == 62.0);
        CHECK(at(t).provenance == PointProvenance::back_filled);
    }
    for (double t = 16; t <= 20; t += 1) {
        CHECK(at(t).t_sup_C == 40.0);
        CHECK(at(t).provenance == PointProvenance::front_filled);
    }
    // interior gaps take the nearest computed value on the cold side
    for (double t = -6; t <= -3; t += 1) {
        CHECK(at(t).t_sup_C == 62.0);
        CHECK(at(t).provenance == PointProvenance::front_filled);
    }
    CHECK(at(4).t_sup_C == 52.0);
    CHECK(at(-7).provenance == PointProvenance::computed);
    CHECK(at(-7).limiting_heater == "h");
}

TEST_CASE("postprocess: smoothing is the identity on a quadratic curve") {
    std::vector<std::pair<double, double>> pts;
    for (int t = -15; t <= 20; ++t)
        pts.push_back({static_cast<double>(t), 50.0 - 0.8 * t + 0.01 * t * t});
    Heatcurve c = curve_from(pts);
    PostprocessOptions opt;
    Heatcurve out = postprocess(c, opt);
    REQUIRE(out.points.size() == 36);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        CHECK(std::abs(out.points[i].t_sup_C - c.points[i].t_sup_C) < 1e-9);
        CHECK(out.points[i].provenance == PointProvenance::computed); // unchanged values
    }
    // idempotence: running it again reproduces the same curve
    Heatcurve again = postprocess(out, opt);
    for (std::size_t i = 0; i < out.points.size(); ++i)
        CHECK(std::abs(again.points[i].t_sup_C - out.points[i].t_sup_C) < 1e-6);
}

TEST_CASE("postprocess: safety offset shifts everything, provenance intact") {
    std::vector<std::pair<double, double>> pts;
    for (int t = -15; t <= 20; ++t) pts.push_back({static_cast<double>(t), 50.0 - 0.5 * t});
    Heatcurve c = curve_from(pts);
    PostprocessOptions opt;
    Heatcurve plain = postprocess(c, opt);
    opt.safety_offset_K = 2.0;
    Heatcurve shifted = postprocess(c, opt);
    REQUIRE(plain.points.size() == shifted.points.size());
    for (std::size_t i = 0; i < plain.points.size(); ++i) {
        CHECK(shifted.points[i].t_sup_C ==
              doctest::Approx(plain.points[i].t_sup_C + 2.0).epsilon(1e-12));
        CHECK(shifted.points[i].provenance == plain.points[i].provenance);
    }
    CHECK(shifted.safety_offset_K == 2.0);
}

TEST_CASE("postprocess: floor clamp keeps the curve physically feasible") {
    std::vector<std::pair<double, double>> pts;
    for (int t = -15; t <= 20; ++t) pts.push_back({static_cast<double>(t), 20.5});
    Heatcurve c = curve_from(pts);
    PostprocessOptions opt;
    opt.floor_t_sup_C = 21.0;
    Heatcurve out = postprocess(c, opt);
    for (const auto& p : out.points) CHECK(p.t_sup_C == 21.0);
}

TEST_CASE("postprocess: smoothing marks moved points") {
    std::vector<std::pair<double, double>> pts;
    for (int t = -15; t <= 20; ++t) {
        double v = 50.0 - 0.5 * t;
        if (t == 0) v += 6.0; // kink the curve so smoothing has work to do
        pts.push_back({static_cast<double>(t), v});
    }
    Heatcurve out = postprocess(curve_from(pts), PostprocessOptions{});
    int smoothed = 0;
    for (const auto& p : out.points)
        if (p.provenance == PointProvenance::smoothed) ++smoothed;
    CHECK(smoothed >= 7); // the spike bleeds across the window
}

TEST_CASE("postprocess: rejects a curve with no computed points") {
    Heatcurve c;
    c.points.push_back(CurvePoint{0.0, 50.0, PointProvenance::front_filled, ""});
    CHECK_THROWS_AS(postprocess(c, PostprocessOptions{}), DataError);
}

TEST_CASE("curve CSV exports") {
    Heatcurve c = curve_from({{-5, 60.5}, {0, 55}}, 2);
    const std::string csv = heatcurve_to_csv(c);
    CHECK(csv == "cluster,t_out_C,t_sup_C,provenance,limiting_heater\n"
                 "2,-5,60.5,computed,h\n"
                 "2,0,55,computed,h\n");
    CHECK(automation_to_csv(c) == "t_out_C,t_sup_C\n-5,60.5\n0,55\n");
}
