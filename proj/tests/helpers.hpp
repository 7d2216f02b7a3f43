#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "nakascan/data_model.hpp"
#include "nakascan/geometry.hpp"
#include "nakascan/grid.hpp"

namespace nakascan::testing {

inline Polygon circle_polygon(double r, std::size_t n = 360, Point2 center = {0, 0}) {
    Polygon p;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        p.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
    return p;
}

inline Polygon rect_polygon(double x0, double y0, double x1, double y1) {
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

/// Parametric image with unit pixel spacing and zero offset, so that mm
/// coordinates equal pixel coordinates.
inline ParametricImage make_image(Grid2D values, MapKind kind = MapKind::M) {
    ParametricImage img;
    img.kind = kind;
    img.values = std::move(values);
    img.pixel_spacing_axial_mm = 1.0;
    img.pixel_spacing_lateral_mm = 1.0;
    img.window_mm = 1.0;
    return img;
}

/// Quadratic Koch (type 1) island: every square side is refined by the
/// 5-segment / one-third generator, giving boundary dimension log5/log3.
inline Polygon koch_island(std::size_t iterations, double side = 10.0) {
    struct Seg {
        Point2 a, b;
    };
    std::vector<Seg> segs = {{{0, 0}, {side, 0}},
                             {{side, 0}, {side, side}},
                             {{side, side}, {0, side}},
                             {{0, side}, {0, 0}}};
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<Seg> next;
        next.reserve(segs.size() * 5);
        for (const auto& s : segs) {
            const double dx = (s.b.x - s.a.x) / 3.0;
            const double dy = (s.b.y - s.a.y) / 3.0;
            // outward normal (left of direction)
            const double nx = -dy;
            const double ny = dx;
            const Point2 p1{s.a.x + dx, s.a.y + dy};
            const Point2 p2{p1.x + nx, p1.y + ny};
            const Point2 p3{p2.x + dx, p2.y + dy};
            const Point2 p4{p3.x - nx, p3.y - ny};
            next.push_back({s.a, p1});
            next.push_back({p1, p2});
            next.push_back({p2, p3});
            next.push_back({p3, p4});
            next.push_back({p4, s.b});
        }
        segs = std::move(next);
    }
    Polygon poly;
    poly.reserve(segs.size());
    for (const auto& s : segs) poly.push_back(s.a);
    return poly;
}

} // namespace nakascan::testing
