#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nakascan/morpho.hpp"
#include "nakascan/phantom.hpp"

using namespace nakascan;
using nakascan::testing::circle_polygon;
using nakascan::testing::koch_island;
using nakascan::testing::rect_polygon;

namespace {

Polygon scale_polygon(const Polygon& p, double s) {
    Polygon out;
    for (const auto& v : p) out.push_back({v.x * s, v.y * s});
    return out;
}

Polygon rotate90(const Polygon& p) {
    Polygon out;
    for (const auto& v : p) out.push_back({-v.y, v.x});
    return out;
}

Polygon ellipse_polygon(double a, double b, std::size_t n = 360) {
    Polygon p;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        p.push_back({a * std::cos(t), b * std::sin(t)});
    }
    return p;
}

} // namespace

TEST_CASE("contour metrics of simple shapes") {
    const ContourMetrics sq = contour_metrics(rect_polygon(0, 0, 1, 1));
    CHECK(sq.area_mm2 == doctest::Approx(1.0));
    CHECK(sq.perimeter_mm == doctest::Approx(4.0));
    CHECK(sq.convex_perimeter_mm == doctest::Approx(4.0));
    CHECK(sq.max_diameter_mm == doctest::Approx(std::sqrt(2.0)));

    const ContourMetrics circ = contour_metrics(circle_polygon(1.0));
    CHECK(circ.area_mm2 == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(circ.perimeter_mm == doctest::Approx(2 * std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("circle shape ratios") {
    const ShapeRatios r = shape_ratios(contour_metrics(circle_polygon(1.0)));
    CHECK(r.roundness == doctest::Approx(std::numbers::pi / 4).epsilon(0.01));
    CHECK(r.compactness == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(0.01));
    CHECK(r.form_factor == doctest::Approx(1.0 / (4 * std::numbers::pi)).epsilon(0.01));
    CHECK(r.aspect_ratio == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.convexity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.solidity == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ellipse aspect ratio is exact") {
    const ShapeRatios r = shape_ratios(contour_metrics(ellipse_polygon(2.0, 1.0)));
    CHECK(r.aspect_ratio == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ratios are scale invariant") {
    const Polygon base = ellipse_polygon(1.7, 1.1, 72);
    const ShapeRatios r0 = shape_ratios(contour_metrics(base));
    for (double s : {0.5, 3.0}) {
        const ShapeRatios rs = shape_ratios(contour_metrics(scale_polygon(base, s)));
        CHECK(rs.aspect_ratio == doctest::Approx(r0.aspect_ratio).epsilon(1e-9));
        CHECK(rs.compactness == doctest::Approx(r0.compactness).epsilon(1e-9));
        CHECK(rs.roundness == doctest::Approx(r0.roundness).epsilon(1e-9));
        CHECK(rs.convexity == doctest::Approx(r0.convexity).epsilon(1e-9));
        CHECK(rs.form_factor == doctest::Approx(r0.form_factor).epsilon(1e-9));
        CHECK(rs.solidity == doctest::Approx(r0.solidity).epsilon(1e-9));
    }
}

TEST_CASE("rotation by 90 degrees inverts the aspect ratio") {
    const Polygon base = ellipse_polygon(2.0, 1.0, 720);
    const ShapeRatios r0 = shape_ratios(contour_metrics(base));
    const ShapeRatios r90 = shape_ratios(contour_metrics(rotate90(base)));
    CHECK(r90.aspect_ratio == doctest::Approx(1.0 / r0.aspect_ratio).epsilon(0.01));
    CHECK(r90.roundness == doctest::Approx(r0.roundness).epsilon(0.01));
    CHECK(r90.solidity == doctest::Approx(r0.solidity).epsilon(0.01));
}

TEST_CASE("convexity and solidity never exceed one") {
    SpiculatedStar star;
    star.amplitude = 0.3;
    const Polygon p = make_lesion_contour(star, {0, 0});
    const ShapeRatios r = shape_ratios(contour_metrics(p));
    CHECK(r.convexity <= 1.0 + 1e-12);
    CHECK(r.solidity <= 1.0 + 1e-12);
    CHECK(r.convexity < 0.99);
}

TEST_CASE("fractal dimension of a straight segment") {
    const Polygon seg = {{0, 0}, {10, 0}};
    CHECK(fd_kolmogorov(seg) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fd_minkowski(seg) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fd_hausdorff(seg) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("fractal dimension of a circle") {
    const Polygon c = circle_polygon(3.0, 256);
    CHECK(fd_kolmogorov(c) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fd_minkowski(c) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fd_hausdorff(c) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("quadratic Koch island dimension") {
    const Polygon k = koch_island(4);
    const double target = std::log(5.0) / std::log(3.0); // = 1.4649...
    CHECK(fd_kolmogorov(k) == doctest::Approx(target).epsilon(0.082)); // +-0.12 absolute
    CHECK(fd_minkowski(k) == doctest::Approx(target).epsilon(0.082));
    CHECK(fd_hausdorff(k) == doctest::Approx(target).epsilon(0.082));
}

TEST_CASE("spiculation monotonicity") {
    double prev_convexity = 2.0;
    double prev_fd[3] = {0.0, 0.0, 0.0};
    for (double amp : {0.05, 0.1, 0.15, 0.2, 0.25}) {
        SpiculatedStar star;
        star.base_radius_mm = 2.0;
        star.spikes = 12;
        star.amplitude = amp;
        const Polygon p = make_lesion_contour(star, {0, 0});
        const ShapeRatios r = shape_ratios(contour_metrics(p));
        CHECK(r.convexity < prev_convexity);
        prev_convexity = r.convexity;
        const double fd[3] = {fd_kolmogorov(p), fd_minkowski(p), fd_hausdorff(p)};
        for (int i = 0; i < 3; ++i) {
            CHECK(fd[i] >= prev_fd[i] - 0.02); // non-decreasing within estimator noise
            prev_fd[i] = fd[i];
        }
    }
}

TEST_CASE("morphometric_features gives the canonical nine") {
    const auto f = morphometric_features(circle_polygon(1.0));
    REQUIRE(f.size() == 9);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(0.01));              // aspect
    CHECK(f[1] == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(0.01));
    CHECK(f[5] == doctest::Approx(1.0).epsilon(1e-9));              // solidity
    CHECK(f[6] == doctest::Approx(1.0).epsilon(0.1));               // fd box
}

TEST_CASE("degenerate contours are rejected") {
    CHECK_THROWS_AS(contour_metrics({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
}
