#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nakascan/geometry.hpp"

using namespace nakascan;
using nakascan::testing::circle_polygon;
using nakascan::testing::rect_polygon;

TEST_CASE("unit square metrics") {
    const Polygon sq = rect_polygon(0, 0, 1, 1);
    CHECK(polygon_area(sq) == doctest::Approx(1.0));
    CHECK(polygon_perimeter(sq) == doctest::Approx(4.0));
    CHECK(polygon_max_diameter(sq) == doctest::Approx(std::sqrt(2.0)));
    const BBox bb = polygon_bbox(sq);
    CHECK(bb.width() == doctest::Approx(1.0));
    CHECK(bb.height() == doctest::Approx(1.0));
    const Point2 c = polygon_centroid(sq);
    CHECK(c.x == doctest::Approx(0.5));
    CHECK(c.y == doctest::Approx(0.5));
}

TEST_CASE("360-gon approximates a circle") {
    const Polygon c = circle_polygon(1.0);
    CHECK(polygon_area(c) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(polygon_perimeter(c) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("convex hull of a convex polygon keeps its perimeter") {
    const Polygon c = circle_polygon(2.0, 64);
    const Polygon h = convex_hull(c);
    CHECK(polygon_perimeter(h) == doctest::Approx(polygon_perimeter(c)).epsilon(1e-9));
    CHECK(polygon_is_convex(h));
}

TEST_CASE("convex hull of a star covers the concavities") {
    Polygon star;
    for (int i = 0; i < 10; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 10.0;
        const double r = (i % 2 == 0) ? 2.0 : 1.0;
        star.push_back({r * std::cos(t), r * std::sin(t)});
    }
    const Polygon h = convex_hull(star);
    CHECK(h.size() == 5);
    CHECK(polygon_area(h) > polygon_area(star));
    CHECK(polygon_perimeter(h) < polygon_perimeter(star));
}

TEST_CASE("point in polygon") {
    const Polygon sq = rect_polygon(0, 0, 2, 2);
    CHECK(point_in_polygon({1, 1}, sq));
    CHECK(!point_in_polygon({3, 1}, sq));
    CHECK(point_in_polygon({0, 1}, sq)); // on edge counts inside
    CHECK(!point_in_polygon({-1e-9, 1}, sq));
}

TEST_CASE("self intersection detection") {
    const Polygon bow = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK(polygon_self_intersects(bow));
    CHECK(!polygon_self_intersects(rect_polygon(0, 0, 1, 1)));
}

TEST_CASE("validate_polygon rejects degenerate shapes") {
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {1, 1}}, "t"), std::invalid_argument);
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {1, 1}, {2, 2}}, "t"), std::invalid_argument);
    CHECK_THROWS_AS(validate_polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}}, "t"),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_polygon(rect_polygon(0, 0, 1, 1), "t"));
}

TEST_CASE("boundary distance") {
    const Polygon sq = rect_polygon(0, 0, 2, 2);
    CHECK(point_polygon_boundary_distance({1, 1}, sq) == doctest::Approx(1.0));
    CHECK(point_polygon_boundary_distance({3, 1}, sq) == doctest::Approx(1.0));
    CHECK(point_polygon_boundary_distance({0, 0}, sq) == doctest::Approx(0.0));
}

TEST_CASE("segment distance") {
    CHECK(point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(point_segment_distance({2, 0}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
}
