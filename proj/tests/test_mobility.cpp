#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ntnsim/mobility.hpp"
#include "ntnsim/region.hpp"

using namespace ntnsim;

namespace {

RegionModel square_region(double lat_lo, double lat_hi, double lon_lo, double lon_hi) {
    return RegionModel({{{lat_lo, lon_lo}, {lat_lo, lon_hi}, {lat_hi, lon_hi}, {lat_hi, lon_lo}}});
}

}  // namespace

TEST_CASE("init_users rejects empty populations") {
    const auto region = square_region(45, 55, -110, -100);
    CHECK_THROWS_AS(init_users(0, region, {}, 1), std::invalid_argument);
}

TEST_CASE("init_users places everyone inside the region") {
    const auto region = square_region(45, 55, -110, -100);
    const auto users = init_users(500, region, {}, 99);
    REQUIRE(users.size() == 500);
    for (const auto& u : users) {
        CHECK(u.position.lat_deg >= 45.0);
        CHECK(u.position.lat_deg <= 55.0);
        CHECK(u.position.lon_deg >= -110.0);
        CHECK(u.position.lon_deg <= -100.0);
        CHECK(region.contains(u.position));
    }
}

TEST_CASE("init_users is deterministic in the seed") {
    const auto region = square_region(45, 55, -110, -100);
    const auto a = init_users(50, region, {}, 1234);
    const auto b = init_users(50, region, {}, 1234);
    const auto c = init_users(50, region, {}, 1235);
    REQUIRE(a.size() == b.size());
    bool any_differs_from_c = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position.lat_deg == b[i].position.lat_deg);
        CHECK(a[i].position.lon_deg == b[i].position.lon_deg);
        CHECK(a[i].velocity.dlat == b[i].velocity.dlat);
        CHECK(a[i].acceleration.dlon == b[i].acceleration.dlon);
        if (a[i].position.lat_deg != c[i].position.lat_deg) any_differs_from_c = true;
    }
    CHECK(any_differs_from_c);
}

TEST_CASE("degenerate region exhausts rejection sampling") {
    // Collinear ring: zero area, so no sample can ever land inside.
    const RegionModel sliver({{{50.0, -100.0}, {51.0, -100.0}, {52.0, -100.0}}});
    CHECK_THROWS_AS(init_users(1, sliver, {}, 5), std::runtime_error);
}

TEST_CASE("zero dynamics leaves positions unchanged") {
    const auto region = square_region(45, 55, -110, -100);
    MobilityParams params;
    params.v_max_deg = 0.0;
    params.sigma_a_deg = 0.0;
    params.sigma_eta_deg = 0.0;
    auto users = init_users(10, region, params, 3);
    const auto before = users;
    step_users(users, params, region);
    for (std::size_t i = 0; i < users.size(); ++i) {
        CHECK(users[i].position.lat_deg == before[i].position.lat_deg);
        CHECK(users[i].position.lon_deg == before[i].position.lon_deg);
    }
}

TEST_CASE("pure integration adds exactly v") {
    const auto region = square_region(40, 60, -120, -90);
    MobilityParams params;
    params.sigma_a_deg = 0.0;
    params.sigma_eta_deg = 0.0;
    auto users = init_users(1, region, params, 17);
    users[0].position = {50.0, -100.0};
    users[0].velocity = {0.1, 0.0};
    users[0].acceleration = {0.0, 0.0};
    step_users(users, params, region);
    CHECK(users[0].position.lat_deg == doctest::Approx(50.1).epsilon(1e-15));
    CHECK(users[0].position.lon_deg == doctest::Approx(-100.0).epsilon(1e-15));
}

TEST_CASE("velocity clamp holds over many random steps") {
    const auto region = square_region(45, 55, -110, -100);
    MobilityParams params;
    params.sigma_a_deg = 0.05;   // deliberately violent dynamics
    params.sigma_eta_deg = 0.08;
    auto users = init_users(100, region, params, 21);
    for (int step = 0; step < 100; ++step) {
        step_users(users, params, region);
        for (const auto& u : users) {
            CHECK(std::abs(u.velocity.dlat) <= params.v_clamp_deg + 1e-12);
            CHECK(std::abs(u.velocity.dlon) <= params.v_clamp_deg + 1e-12);
        }
    }
}

TEST_CASE("users stay on land across steps") {
    const auto region = square_region(45, 48, -105, -100);
    MobilityParams params;
    params.sigma_eta_deg = 0.05;
    auto users = init_users(60, region, params, 8);
    for (int step = 0; step < 200; ++step) {
        step_users(users, params, region);
        for (const auto& u : users) CHECK(region.contains(u.position));
    }
}

TEST_CASE("trajectories are reproducible") {
    const auto region = square_region(45, 55, -110, -100);
    MobilityParams params;
    auto a = init_users(30, region, params, 777);
    auto b = init_users(30, region, params, 777);
    for (int step = 0; step < 50; ++step) {
        step_users(a, params, region);
        step_users(b, params, region);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position.lat_deg == b[i].position.lat_deg);
        CHECK(a[i].position.lon_deg == b[i].position.lon_deg);
    }
}

TEST_CASE("GeoJSON region files load") {
    const RegionModel canada = RegionModel::from_geojson_file(NTNSIM_DATA_DIR "/canada.geojson");
    CHECK(canada.rings().size() >= 5);        // mainland plus major islands
    CHECK(canada.rings()[0].size() >= 100);
    CHECK(canada.contains({50.0, -100.0}));   // prairies
    CHECK(canada.contains({53.0, -122.0}));   // central BC
    CHECK(canada.contains({46.8, -71.3}));    // Quebec City area
    CHECK(canada.contains({69.5, -105.0}));   // Victoria Island
    CHECK(canada.contains({68.0, -70.0}));    // Baffin Island
    CHECK(canada.contains({48.5, -56.0}));    // Newfoundland
    CHECK_FALSE(canada.contains({58.0, -85.0}));  // Hudson Bay
    CHECK_FALSE(canada.contains({44.0, -95.0}));  // south of the border
    CHECK_FALSE(canada.contains({48.5, -62.0}));  // Gulf of St. Lawrence
    CHECK_FALSE(canada.contains({74.0, -95.0}));  // Barrow Strait

    const std::string multi = R"({
      "type": "FeatureCollection",
      "features": [{
        "type": "Feature",
        "geometry": {
          "type": "MultiPolygon",
          "coordinates": [
            [[[0, 0], [2, 0], [2, 2], [0, 2], [0, 0]]],
            [[[10, 10], [12, 10], [12, 12], [10, 12], [10, 10]]]
          ]
        }
      }]
    })";
    const RegionModel two = RegionModel::from_geojson(multi);
    CHECK(two.rings().size() == 2);
    CHECK(two.contains({1.0, 1.0}));
    CHECK(two.contains({11.0, 11.0}));
    CHECK_FALSE(two.contains({5.0, 5.0}));

    CHECK_THROWS_AS(RegionModel::from_geojson("{\"type\": \"Point\"}"), std::invalid_argument);
    CHECK_THROWS_AS(RegionModel::from_geojson("not json"), std::invalid_argument);
    // Unclosed ring.
    CHECK_THROWS_AS(RegionModel::from_geojson(R"({
      "type": "Polygon",
      "coordinates": [[[0, 0], [2, 0], [2, 2], [0, 2]]]
    })"),
                    std::invalid_argument);
}
