#pragma once

#include <cstddef>
#include <vector>

namespace nakascan {

/// Point in the scan plane, millimetres. x is lateral, y is axial (depth).
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

struct BBox {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

/// Closed polygon; vertices are stored once, the closing edge
/// (back -> front) is implicit.
using Polygon = std::vector<Point2>;

double polygon_area(const Polygon& p);       // unsigned, shoelace
double polygon_perimeter(const Polygon& p);  // includes closing edge
Point2 polygon_centroid(const Polygon& p);   // area centroid
BBox polygon_bbox(const Polygon& p);

/// Andrew monotone chain; result is CCW without repeated endpoint.
Polygon convex_hull(const Polygon& p);

/// Largest pairwise vertex distance of the convex hull.
double polygon_max_diameter(const Polygon& p);

bool polygon_is_convex(const Polygon& p);
bool polygon_self_intersects(const Polygon& p);

/// Even-odd rule; points exactly on an edge count as inside.
bool point_in_polygon(const Point2& pt, const Polygon& poly);

double point_segment_distance(const Point2& pt, const Point2& a, const Point2& b);

/// Minimum distance from pt to the polygon boundary (closed polyline).
double point_polygon_boundary_distance(const Point2& pt, const Polygon& poly);

/// Validates the AnnotationSet polygon invariants: >= 3 vertices,
/// non-degenerate area, no self intersection. Throws std::invalid_argument.
void validate_polygon(const Polygon& p, const char* what);

} // namespace nakascan
