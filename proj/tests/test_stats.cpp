#include <doctest.h>

#include <random>
#include <vector>

#include "heatcurve/stats.hpp"

using namespace heatcurve;

TEST_CASE("quantile: linear interpolation on 1..10") {
    std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(quantile(v, 0.9) == doctest::Approx(9.1).epsilon(1e-12));
    CHECK(quantile(v, 0.1) == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(quantile(v, 0.5) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 10.0);
}

TEST_CASE("quantile: single element and unsorted input") {
    CHECK(quantile({42.0}, 0.9) == 42.0);
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
}

TEST_CASE("quantile: order statistics hit exactly at k/(n-1)") {
    std::vector<double> v{10, 20, 30, 40, 50};
    CHECK(quantile(v, 0.25) == 20.0);
    CHECK(quantile(v, 0.75) == 40.0);
}

TEST_CASE("quantile: monotone in p") {
    std::mt19937_64 rng(7);
    std::vector<double> v(37);
    for (auto& x : v) x = static_cast<double>(rng() % 1000) / 10.0;
    double prev = quantile(v, 0.0);
    for (int i = 1; i <= 20; ++i) {
        double q = quantile(v, i / 20.0);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("mean") {
    CHECK(mean({1.0, 2.0, 3.0}) == doctest::Approx(2.0));
    CHECK(mean({-4.0}) == -4.0);
}

TEST_CASE("missing marker") {
    CHECK(is_missing(kMissing));
    CHECK(!is_missing(0.0));
    CHECK(!is_missing(-273.15));
}
