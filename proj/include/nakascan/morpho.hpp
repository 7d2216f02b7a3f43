#pragma once

#include <vector>

#include "nakascan/geometry.hpp"

namespace nakascan {

struct ContourMetrics {
    double area_mm2 = 0.0;
    double perimeter_mm = 0.0;
    double convex_perimeter_mm = 0.0;
    double convex_area_mm2 = 0.0;
    double max_diameter_mm = 0.0;
    double vertical_extent_mm = 0.0;
    double horizontal_extent_mm = 0.0;
};

ContourMetrics contour_metrics(const Polygon& contour);

/// The six shape ratios. Throws on zero denominators.
struct ShapeRatios {
    double aspect_ratio = 0.0; // vertical / horizontal extent
    double compactness = 0.0;  // sqrt(area) / max diameter
    double roundness = 0.0;    // area / max diameter^2
    double convexity = 0.0;    // convex perimeter / perimeter
    double form_factor = 0.0;  // area / perimeter^2
    double solidity = 0.0;     // area / convex area
};

ShapeRatios shape_ratios(const ContourMetrics& m);

/// Grid pitch used when fractal estimators rasterize the contour.
inline constexpr double kFractalRasterGridMm = 0.02;

/// Default scale ladders, derived from the contour's max diameter.
std::vector<double> default_box_sizes(const Polygon& contour);   // 8 steps
std::vector<double> default_disk_radii(const Polygon& contour);  // 6 log-spaced
std::vector<double> default_ruler_lengths(const Polygon& contour); // 6 log-spaced

/// Box-counting dimension: slope of log N(s) vs log(1/s) over the given
/// box sizes (mm, decreasing).
double fd_kolmogorov(const Polygon& contour, const std::vector<double>& box_sizes);
double fd_kolmogorov(const Polygon& contour);

/// Minkowski sausage dimension: 2 - slope of log Area(r) vs log r over
/// the dilation radii (mm, increasing).
double fd_minkowski(const Polygon& contour, const std::vector<double>& radii);
double fd_minkowski(const Polygon& contour);

/// Divider (compass) dimension: 1 - slope of log P(eps) vs log eps over
/// the ruler lengths (mm, decreasing).
double fd_hausdorff(const Polygon& contour, const std::vector<double>& ruler_lengths);
double fd_hausdorff(const Polygon& contour);

/// All nine morphometric features in canonical order: the six ratios
/// followed by the three fractal dimensions.
std::vector<double> morphometric_features(const Polygon& contour);

} // namespace nakascan
