#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fcdtt/geo.hpp"
#include "fcdtt/rng.hpp"

using namespace fcdtt;

namespace {

GeoPoint random_point_near(Rng &rng, const GeoPoint &center, double radius_m) {
    double north = rng.uniform(-radius_m, radius_m);
    double east = rng.uniform(-radius_m, radius_m);
    double dlat = north / kEarthRadiusM * 180.0 / M_PI;
    double dlon = east / (kEarthRadiusM * std::cos(center.lat * M_PI / 180.0)) * 180.0 / M_PI;
    return GeoPoint{center.lat + dlat, center.lon + dlon};
}

// Independent oracle: dense sweep of alpha in steps of 1e-4.
SegmentProjection brute_force_projection(const GeoPoint &p, const GeoPoint &a, const GeoPoint &b) {
    SegmentProjection best{0.0, geodesic_distance(p, b)};
    for (int i = 0; i <= 10000; ++i) {
        double alpha = i * 1e-4;
        double d = geodesic_distance(p, interpolate(a, b, alpha));
        if (d < best.distance_m) best = {alpha, d};
    }
    return best;
}

}  // namespace

TEST_CASE("geodesic_distance reference values") {
    CHECK(geodesic_distance({0, 0}, {0, 0}) == 0.0);
    // One degree of arc along the equator: pi/180 * R.
    CHECK(std::fabs(geodesic_distance({0, 0}, {0, 1}) - 111194.9) < 0.1);
    // Quarter great circle: pi/2 * R.
    CHECK(std::fabs(geodesic_distance({0, 0}, {90, 0}) - 10007543.0) < 1.0);
}

TEST_CASE("geodesic_distance rejects bad input") {
    CHECK_THROWS_AS(geodesic_distance({91, 0}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(geodesic_distance({0, 0}, {0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("geodesic_distance symmetry and triangle inequality") {
    Rng rng(42);
    GeoPoint center{28.6, 77.0};
    for (int i = 0; i < 200; ++i) {
        GeoPoint a = random_point_near(rng, center, 5000.0);
        GeoPoint b = random_point_near(rng, center, 5000.0);
        GeoPoint c = random_point_near(rng, center, 5000.0);
        double ab = geodesic_distance(a, b);
        CHECK(ab == geodesic_distance(b, a));
        double ac = geodesic_distance(a, c);
        double cb = geodesic_distance(c, b);
        CHECK(ab <= ac + cb + 1e-6 * (ac + cb));
    }
}

TEST_CASE("interpolate endpoints and interior points") {
    GeoPoint a{0, 0}, b{0, 2};
    GeoPoint at1 = interpolate(a, b, 1.0);
    CHECK(at1.lat == a.lat);
    CHECK(at1.lon == a.lon);
    GeoPoint at0 = interpolate(a, b, 0.0);
    CHECK(at0.lat == b.lat);
    CHECK(at0.lon == b.lon);
    GeoPoint mid = interpolate(a, b, 0.5);
    CHECK(mid.lat == doctest::Approx(0.0));
    CHECK(mid.lon == doctest::Approx(1.0));
    GeoPoint q = interpolate({10, 20}, {14, 24}, 0.25);
    CHECK(q.lat == doctest::Approx(13.0));
    CHECK(q.lon == doctest::Approx(23.0));
    CHECK_THROWS_AS(interpolate(a, b, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(interpolate(a, b, -0.1), std::invalid_argument);
}

TEST_CASE("point_to_segment_distance endpoint cases") {
    GeoPoint a{28.6, 77.0}, b{28.6, 77.001};
    auto at_a = point_to_segment_distance(a, a, b);
    CHECK(at_a.distance_m == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(at_a.alpha == doctest::Approx(1.0));

    // Collinear point beyond B snaps to B.
    GeoPoint beyond{28.6, 77.002};
    auto at_b = point_to_segment_distance(beyond, a, b);
    CHECK(at_b.alpha == doctest::Approx(0.0));
    CHECK(at_b.distance_m == doctest::Approx(geodesic_distance(beyond, b)));

    CHECK_THROWS_AS(point_to_segment_distance(a, b, b), std::invalid_argument);
}

TEST_CASE("point_to_segment_distance perpendicular midpoint") {
    GeoPoint a{28.6, 77.0}, b{28.6, 77.001};
    GeoPoint mid = interpolate(a, b, 0.5);
    double offset = 20.0;
    GeoPoint p{mid.lat + offset / kEarthRadiusM * 180.0 / M_PI, mid.lon};
    auto proj = point_to_segment_distance(p, a, b);
    CHECK(proj.alpha == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(proj.distance_m == doctest::Approx(offset).epsilon(1e-3));
    auto brute = brute_force_projection(p, a, b);
    CHECK(std::fabs(proj.distance_m - brute.distance_m) < 0.5);
}

TEST_CASE("point_to_segment_distance matches dense-alpha brute force") {
    Rng rng(1234);
    GeoPoint center{28.6, 77.0};
    for (int i = 0; i < 50; ++i) {
        GeoPoint a = random_point_near(rng, center, 400.0);
        GeoPoint b = random_point_near(rng, center, 400.0);
        if (geodesic_distance(a, b) < 1.0) continue;
        GeoPoint p = random_point_near(rng, center, 600.0);
        auto proj = point_to_segment_distance(p, a, b);
        auto brute = brute_force_projection(p, a, b);
        CHECK(std::fabs(proj.distance_m - brute.distance_m) < 0.5);
        CHECK(proj.distance_m <=
              std::min(geodesic_distance(p, a), geodesic_distance(p, b)) + 1e-9);
    }
}
