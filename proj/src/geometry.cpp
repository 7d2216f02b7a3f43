#include "nakascan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nakascan {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

int orient(const Point2& a, const Point2& b, const Point2& c) {
    double v = cross(a, b, c);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

} // namespace

double polygon_area(const Polygon& p) {
    double s = 0.0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = p[i];
        const Point2& b = p[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return std::abs(s) * 0.5;
}

double polygon_perimeter(const Polygon& p) {
    double s = 0.0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) s += dist(p[i], p[(i + 1) % n]);
    return s;
}

Point2 polygon_centroid(const Polygon& p) {
    double a = 0.0, cx = 0.0, cy = 0.0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& u = p[i];
        const Point2& v = p[(i + 1) % n];
        double w = u.x * v.y - v.x * u.y;
        a += w;
        cx += (u.x + v.x) * w;
        cy += (u.y + v.y) * w;
    }
    if (std::abs(a) < 1e-300) {
        // degenerate: fall back to vertex mean
        Point2 m;
        for (const auto& q : p) { m.x += q.x; m.y += q.y; }
        m.x /= static_cast<double>(n);
        m.y /= static_cast<double>(n);
        return m;
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

BBox polygon_bbox(const Polygon& p) {
    BBox b;
    b.xmin = b.xmax = p.front().x;
    b.ymin = b.ymax = p.front().y;
    for (const auto& q : p) {
        b.xmin = std::min(b.xmin, q.x);
        b.xmax = std::max(b.xmax, q.x);
        b.ymin = std::min(b.ymin, q.y);
        b.ymax = std::max(b.ymax, q.y);
    }
    return b;
}

Polygon convex_hull(const Polygon& p) {
    Polygon pts = p;
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    Polygon hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_max_diameter(const Polygon& p) {
    Polygon h = convex_hull(p);
    double best = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
            best = std::max(best, dist(h[i], h[j]));
    return best;
}

bool polygon_is_convex(const Polygon& p) {
    const std::size_t n = p.size();
    if (n < 4) return true;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int o = orient(p[i], p[(i + 1) % n], p[(i + 2) % n]);
        if (o == 0) continue;
        if (sign == 0) sign = o;
        else if (o != sign) return false;
    }
    return true;
}

bool polygon_self_intersects(const Polygon& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (share a vertex)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]))
                return true;
        }
    }
    return false;
}

bool point_in_polygon(const Point2& pt, const Polygon& poly) {
    const std::size_t n = poly.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& a = poly[i];
        const Point2& b = poly[j];
        if (orient(a, b, pt) == 0 && on_segment(a, b, pt)) return true;
        if ((a.y > pt.y) != (b.y > pt.y)) {
            double xint = (b.x - a.x) * (pt.y - a.y) / (b.y - a.y) + a.x;
            if (pt.x < xint) inside = !inside;
        }
    }
    return inside;
}

double point_segment_distance(const Point2& pt, const Point2& a, const Point2& b) {
    double dx = b.x - a.x, dy = b.y - a.y;
    double len2 = dx * dx + dy * dy;
    if (len2 <= 0.0) return dist(pt, a);
    double t = ((pt.x - a.x) * dx + (pt.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(pt.x - (a.x + t * dx), pt.y - (a.y + t * dy));
}

double point_polygon_boundary_distance(const Point2& pt, const Polygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_distance(pt, poly[i], poly[(i + 1) % n]));
    return best;
}

void validate_polygon(const Polygon& p, const char* what) {
    if (p.size() < 3)
        throw std::invalid_argument(std::string(what) + ": degenerate polygon (< 3 vertices)");
    if (polygon_area(p) <= 0.0)
        throw std::invalid_argument(std::string(what) + ": degenerate polygon (zero area)");
    if (polygon_self_intersects(p))
        throw std::invalid_argument(std::string(what) + ": self-intersecting polygon");
}

} // namespace nakascan
