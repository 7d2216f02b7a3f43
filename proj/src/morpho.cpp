#include "nakascan/morpho.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace nakascan {

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx <= 0.0) throw std::invalid_argument("slope fit: degenerate abscissa");
    return sxy / sxx;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

/// Dense resampling of the closed contour at the given step.
std::vector<Point2> resample_boundary(const Polygon& contour, double step) {
    std::vector<Point2> pts;
    const std::size_t n = contour.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = contour[i];
        const Point2& b = contour[(i + 1) % n];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
        for (std::size_t j = 0; j < k; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(k);
            pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return pts;
}

} // namespace

ContourMetrics contour_metrics(const Polygon& contour) {
    if (contour.size() < 3)
        throw std::invalid_argument("contour_metrics: degenerate polygon");
    ContourMetrics m;
    m.area_mm2 = polygon_area(contour);
    if (m.area_mm2 <= 0.0)
        throw std::invalid_argument("contour_metrics: zero-area polygon");
    m.perimeter_mm = polygon_perimeter(contour);
    Polygon hull = convex_hull(contour);
    m.convex_perimeter_mm = polygon_perimeter(hull);
    m.convex_area_mm2 = polygon_area(hull);
    m.max_diameter_mm = polygon_max_diameter(contour);
    BBox bb = polygon_bbox(contour);
    m.vertical_extent_mm = bb.height();
    m.horizontal_extent_mm = bb.width();
    return m;
}

ShapeRatios shape_ratios(const ContourMetrics& m) {
    if (m.horizontal_extent_mm <= 0.0)
        throw std::invalid_argument("shape_ratios: zero horizontal extent");
    if (m.perimeter_mm <= 0.0) throw std::invalid_argument("shape_ratios: zero perimeter");
    if (m.max_diameter_mm <= 0.0) throw std::invalid_argument("shape_ratios: zero diameter");
    if (m.convex_area_mm2 <= 0.0) throw std::invalid_argument("shape_ratios: zero convex area");
    ShapeRatios r;
    r.aspect_ratio = m.vertical_extent_mm / m.horizontal_extent_mm;
    r.compactness = std::sqrt(m.area_mm2) / m.max_diameter_mm;
    r.roundness = m.area_mm2 / (m.max_diameter_mm * m.max_diameter_mm);
    r.convexity = m.convex_perimeter_mm / m.perimeter_mm;
    r.form_factor = m.area_mm2 / (m.perimeter_mm * m.perimeter_mm);
    r.solidity = m.area_mm2 / m.convex_area_mm2;
    return r;
}

std::vector<double> default_box_sizes(const Polygon& contour) {
    const double d = polygon_max_diameter(contour);
    std::vector<double> sizes;
    for (int i = 1; i <= 8; ++i) sizes.push_back(d / std::pow(2.0, i));
    return sizes;
}

std::vector<double> default_disk_radii(const Polygon& contour) {
    const double d = polygon_max_diameter(contour);
    return log_spaced(d / 48.0, d / 6.0, 6);
}

std::vector<double> default_ruler_lengths(const Polygon& contour) {
    const double d = polygon_max_diameter(contour);
    auto v = log_spaced(d / 64.0, d / 4.0, 6); // increasing
    std::reverse(v.begin(), v.end());          // spec orders rulers decreasing
    return v;
}

double fd_kolmogorov(const Polygon& contour, const std::vector<double>& box_sizes) {
    if (contour.size() < 2) throw std::invalid_argument("fd_kolmogorov: empty contour");
    if (box_sizes.size() < 4)
        throw std::invalid_argument("fd_kolmogorov: need at least 4 box sizes");
    double lo = *std::min_element(box_sizes.begin(), box_sizes.end());
    double hi = *std::max_element(box_sizes.begin(), box_sizes.end());
    if (hi / lo < 4.0)
        throw std::invalid_argument("fd_kolmogorov: box sizes must span >= 2 octaves");
    const BBox bb = polygon_bbox(contour);
    if (std::max(bb.width(), bb.height()) < lo)
        throw std::invalid_argument("fd_kolmogorov: contour smaller than finest grid");

    std::vector<double> lx, ly;
    for (double s : box_sizes) {
        const double step = std::min(kFractalRasterGridMm, s / 4.0);
        auto pts = resample_boundary(contour, step);
        std::unordered_set<std::uint64_t> cells;
        for (const auto& p : pts) {
            const auto ix = static_cast<std::int64_t>(std::floor((p.x - bb.xmin) / s));
            const auto iy = static_cast<std::int64_t>(std::floor((p.y - bb.ymin) / s));
            cells.insert((static_cast<std::uint64_t>(ix) << 32) ^
                         static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)));
        }
        lx.push_back(std::log(1.0 / s));
        ly.push_back(std::log(static_cast<double>(cells.size())));
    }
    return ls_slope(lx, ly);
}

double fd_kolmogorov(const Polygon& contour) {
    return fd_kolmogorov(contour, default_box_sizes(contour));
}

double fd_minkowski(const Polygon& contour, const std::vector<double>& radii) {
    if (contour.size() < 2) throw std::invalid_argument("fd_minkowski: empty contour");
    if (radii.size() < 4)
        throw std::invalid_argument("fd_minkowski: need at least 4 radii");
    const BBox bb = polygon_bbox(contour);
    const double rmax = *std::max_element(radii.begin(), radii.end());
    if (rmax > 2.0 * std::max(bb.width(), bb.height()))
        throw std::invalid_argument("fd_minkowski: radius exceeds contour extent");

    const double cell = kFractalRasterGridMm;
    const double x0 = bb.xmin - rmax - 2.0 * cell;
    const double y0 = bb.ymin - rmax - 2.0 * cell;
    const auto nx = static_cast<std::size_t>(std::ceil((bb.width() + 2.0 * (rmax + 2.0 * cell)) / cell));
    const auto ny = static_cast<std::size_t>(std::ceil((bb.height() + 2.0 * (rmax + 2.0 * cell)) / cell));

    // distance field to the boundary polyline, then threshold per radius
    const std::size_t n = contour.size();
    std::vector<double> dist(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        const double py = y0 + (static_cast<double>(iy) + 0.5) * cell;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const Point2 p{x0 + (static_cast<double>(ix) + 0.5) * cell, py};
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                double d = point_segment_distance(p, contour[i], contour[(i + 1) % n]);
                if (d < best) best = d;
            }
            dist[iy * nx + ix] = best;
        }
    }

    std::vector<double> lx, ly;
    for (double r : radii) {
        std::size_t count = 0;
        for (double d : dist)
            if (d <= r) ++count;
        lx.push_back(std::log(r));
        ly.push_back(std::log(static_cast<double>(count) * cell * cell));
    }
    return 2.0 - ls_slope(lx, ly);
}

double fd_minkowski(const Polygon& contour) {
    return fd_minkowski(contour, default_disk_radii(contour));
}

namespace {

struct ArcWalker {
    std::vector<Point2> pts; // closed, pts[0] repeated implicitly
    std::vector<double> cum; // cumulative arc length at each vertex
    double total = 0.0;

    explicit ArcWalker(const Polygon& contour) {
        const std::size_t n = contour.size();
        pts.reserve(n + 1);
        cum.reserve(n + 1);
        double s = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const Point2& p = contour[i % n];
            if (i > 0) s += std::hypot(p.x - pts.back().x, p.y - pts.back().y);
            pts.push_back(p);
            cum.push_back(s);
        }
        total = s;
    }

    Point2 at(double s) const {
        auto it = std::upper_bound(cum.begin(), cum.end(), s);
        std::size_t i = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin() - 1);
        if (i + 1 >= pts.size()) return pts.back();
        const double seg = cum[i + 1] - cum[i];
        const double t = seg > 0.0 ? (s - cum[i]) / seg : 0.0;
        return {pts[i].x + t * (pts[i + 1].x - pts[i].x),
                pts[i].y + t * (pts[i + 1].y - pts[i].y)};
    }
};

} // namespace

double fd_hausdorff(const Polygon& contour, const std::vector<double>& ruler_lengths) {
    if (contour.size() < 2) throw std::invalid_argument("fd_hausdorff: empty contour");
    if (ruler_lengths.size() < 4)
        throw std::invalid_argument("fd_hausdorff: need at least 4 ruler lengths");
    const double dmax = polygon_max_diameter(contour);
    for (double eps : ruler_lengths)
        if (eps > dmax)
            throw std::invalid_argument("fd_hausdorff: ruler longer than max diameter");

    ArcWalker walk(contour);
    std::vector<double> lx, ly;
    for (double eps : ruler_lengths) {
        // compass walk: find successive boundary points exactly eps apart
        double pos = 0.0;
        Point2 anchor = walk.at(0.0);
        std::size_t steps = 0;
        const double fine = eps / 64.0;
        while (pos < walk.total) {
            // march until the chord from the anchor reaches eps
            double lo = pos, hi = pos;
            bool found = false;
            for (double s = pos + fine; s <= walk.total + 1e-12; s += fine) {
                Point2 p = walk.at(std::min(s, walk.total));
                double d = std::hypot(p.x - anchor.x, p.y - anchor.y);
                if (d >= eps) {
                    hi = std::min(s, walk.total);
                    found = true;
                    break;
                }
                lo = std::min(s, walk.total);
            }
            if (!found) break;
            for (int it = 0; it < 40; ++it) { // bisect the crossing
                double mid = 0.5 * (lo + hi);
                Point2 p = walk.at(mid);
                if (std::hypot(p.x - anchor.x, p.y - anchor.y) >= eps) hi = mid;
                else lo = mid;
            }
            pos = hi;
            anchor = walk.at(pos);
            ++steps;
        }
        Point2 start = walk.at(0.0);
        const double remainder = std::hypot(start.x - anchor.x, start.y - anchor.y);
        const double measured = static_cast<double>(steps) * eps + remainder;
        lx.push_back(std::log(eps));
        ly.push_back(std::log(measured));
    }
    return 1.0 - ls_slope(lx, ly);
}

double fd_hausdorff(const Polygon& contour) {
    return fd_hausdorff(contour, default_ruler_lengths(contour));
}

std::vector<double> morphometric_features(const Polygon& contour) {
    const ContourMetrics m = contour_metrics(contour);
    const ShapeRatios r = shape_ratios(m);
    return {r.aspect_ratio, r.compactness,  r.roundness,
            r.convexity,    r.form_factor,  r.solidity,
            fd_kolmogorov(contour), fd_minkowski(contour), fd_hausdorff(contour)};
}

} // namespace nakascan
