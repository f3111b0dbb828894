#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ntnsim/metrics.hpp"
#include "ntnsim/rng.hpp"

using namespace ntnsim;

TEST_CASE("user rate anchors") {
    CHECK(user_rate_bps(2e7, 1.0) == doctest::Approx(2e7).epsilon(1e-12));
    CHECK(user_rate_bps(2e7, 0.0) == doctest::Approx(0.0));
    // From the link-budget anchor SINR of ~25.76.
    CHECK(user_rate_bps(2e7, 25.76) == doctest::Approx(9.48e7).epsilon(0.005));
}

TEST_CASE("sum rate additivity") {
    std::vector<LinkRecord> links;
    CHECK(sum_rate_bps(links) == 0.0);

    for (int i = 0; i < 3; ++i) {
        LinkRecord l;
        l.user_id = i;
        l.rate_bps = user_rate_bps(2e7, 1.0);
        links.push_back(l);
    }
    CHECK(sum_rate_bps(links) == doctest::Approx(6e7).epsilon(1e-12));

    // Brute-force oracle on a random instance.
    Rng rng(3);
    links.clear();
    double expected = 0.0;
    for (int i = 0; i < 10; ++i) {
        LinkRecord l;
        l.user_id = i;
        l.rate_bps = user_rate_bps(2e7, rng.uniform(0.0, 50.0));
        expected += l.rate_bps;
        links.push_back(l);
    }
    CHECK(sum_rate_bps(links) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("JFI anchors") {
    // All users at the same positive rate: perfect fairness.
    std::vector<double> equal(37, 5.0e6);
    CHECK(jfi(equal, 37) == doctest::Approx(1.0).epsilon(1e-12));

    // One served user out of n: the 1/n floor.
    std::vector<double> single{9.0e7};
    CHECK(jfi(single, 40) == doctest::Approx(1.0 / 40.0).epsilon(1e-12));

    CHECK(jfi({}, 10) == 0.0);
    std::vector<double> zeros(5, 0.0);
    CHECK(jfi(zeros, 10) == 0.0);
}

TEST_CASE("JFI scale invariance and bounds") {
    Rng rng(19);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = rng.uniform_int(1, 40);
        const int served = rng.uniform_int(1, n);
        std::vector<double> rates(static_cast<std::size_t>(served));
        for (auto& r : rates) r = rng.uniform(1e-3, 1e9);
        const double f = jfi(rates, n);
        CHECK(f >= 1.0 / n - 1e-12);
        CHECK(f <= 1.0 + 1e-12);

        std::vector<double> scaled = rates;
        const double c = rng.uniform(0.1, 1000.0);
        for (auto& r : scaled) r *= c;
        CHECK(jfi(scaled, n) == doctest::Approx(f).epsilon(1e-9));
    }
}

TEST_CASE("scalarize weights and normalization") {
    CHECK(scalarize(1.5e10, 0.4, 1.0, 2e10) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(scalarize(1.5e10, 0.4, 0.0, 2e10) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(scalarize(1.6e10, 0.4, 0.5, 2e10) == doctest::Approx(0.6).epsilon(1e-12));
    // Normalized throughput saturates at 1.
    CHECK(scalarize(9e10, 0.0, 1.0, 2e10) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(scalarize(1e10, 0.5, 1.5, 2e10), std::invalid_argument);
    CHECK_THROWS_AS(scalarize(1e10, 0.5, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("scalarize is monotone in both objectives") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        const double omega = rng.uniform(0.05, 0.95);
        const double r = rng.uniform(0.0, 1.9e10);
        const double j = rng.uniform(0.0, 0.9);
        const double base = scalarize(r, j, omega, 2e10);
        CHECK(scalarize(r + 1e8, j, omega, 2e10) >= base);
        CHECK(scalarize(r, j + 0.05, omega, 2e10) > base);
    }
}

TEST_CASE("beam radius") {
    const GeoPoint centroid{50.0, -100.0};
    std::vector<GeoPoint> members{centroid};
    CHECK(beam_radius_km(centroid, members) == doctest::Approx(0.0));

    // Two members 50 km north/south of the centroid.
    const double dlat = rad_to_deg(50.0 / kEarthRadiusKm);
    members = {{50.0 + dlat, -100.0}, {50.0 - dlat, -100.0}};
    CHECK(beam_radius_km(centroid, members) == doctest::Approx(50.0).epsilon(1e-9));

    CHECK_THROWS_AS(beam_radius_km(centroid, {}), std::invalid_argument);
}

TEST_CASE("aggregate_values confidence intervals") {
    std::vector<double> identical(8, 3.25);
    const MeanCi same = aggregate_values(identical);
    CHECK(same.mean == doctest::Approx(3.25));
    CHECK(same.ci_half_width == doctest::Approx(0.0));
    CHECK(same.ci_defined);

    // Two samples {a, b}: mean (a+b)/2, half-width 1.96*|a-b|/2.
    std::vector<double> two{4.0, 10.0};
    const MeanCi pair = aggregate_values(two);
    CHECK(pair.mean == doctest::Approx(7.0));
    CHECK(pair.ci_half_width == doctest::Approx(1.96 * 6.0 / 2.0).epsilon(1e-12));

    std::vector<double> one{5.0};
    const MeanCi solo = aggregate_values(one);
    CHECK(solo.mean == doctest::Approx(5.0));
    CHECK_FALSE(solo.ci_defined);

    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> vals(static_cast<std::size_t>(rng.uniform_int(2, 30)));
        for (auto& v : vals) v = rng.uniform(-10, 10);
        const MeanCi agg = aggregate_values(vals);
        CHECK(agg.mean - agg.ci_half_width <= agg.mean);
        CHECK(agg.mean + agg.ci_half_width >= agg.mean);
    }
}

TEST_CASE("aggregate_series runs per step") {
    const std::vector<std::vector<double>> series{{1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}};
    const auto agg = aggregate_series(series);
    REQUIRE(agg.size() == 3);
    CHECK(agg[0].mean == doctest::Approx(2.0));
    CHECK(agg[1].mean == doctest::Approx(2.0));
    CHECK(agg[1].ci_half_width == doctest::Approx(0.0));
    CHECK(agg[2].mean == doctest::Approx(2.0));
    CHECK_THROWS_AS(aggregate_series({{1.0}, {1.0, 2.0}}), std::invalid_argument);
}
