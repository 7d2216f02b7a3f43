#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nakascan/data_model.hpp"
#include "nakascan/features.hpp"
#include "nakascan/imaging.hpp"

namespace nakascan {

/// Region mean summary used by the shadow and relative-absorption
/// features. Naming follows the posterior/lateral region layout:
/// pl = tumor-posterior, pnr/pnl = right/left posterior,
/// al = tumor, an = lateral average, pn = posterior average.
struct RegionMeans {
    double mean_tumor_posterior = 0.0;  // M_pl
    double mean_right_posterior = 0.0;  // M_pnr
    double mean_left_posterior = 0.0;   // M_pnl
    double mean_tumor = 0.0;            // M_al
    double mean_lateral_avg = 0.0;      // M_an
    double mean_posterior_avg = 0.0;    // M_pn
    double d1_mm = 0.0;                 // centroid distance, pn vs an
    double d2_mm = 0.0;                 // centroid distance, pl vs al
    double lesion_axial_thickness_mm = 0.0;
};

/// Pixels of img whose centers fall inside the polygon (mm coordinates).
std::vector<double> pixels_in_region(const ParametricImage& img, const Polygon& region);

/// (echogenicity, heterogeneity): mean and population standard deviation
/// of the pixels inside the region. Requires >= 16 mapped pixels.
std::pair<double, double> region_stats(const ParametricImage& img, const Polygon& region);

RegionMeans region_means(const ParametricImage& img, const AnnotationSet& ann);

/// Four-neighborhood texture: mean absolute neighbor difference over the
/// lesion interior, normalized by the interior mean intensity. Zero when
/// the lesion is flat.
double fnpa(const ParametricImage& img, const Polygon& lesion);

/// Hurst roughness: per 7x7 block fully inside the lesion, regress
/// log mean|difference| against log lag over axial/lateral lags 1..3;
/// feature is the mean block slope.
double hurst_fd(const ParametricImage& img, const Polygon& lesion);

/// GLCM contrast over the whole image: 64 min-max levels, symmetric
/// (0,1) offset.
double cooccurrence_contrast(const ParametricImage& img);

double shadow_normal(const RegionMeans& means);

double relative_absorption(const RegionMeans& means);

/// (margin_area, margin_gradient) over the one-pixel-wide boundary band.
std::pair<double, double> margin_features(const ParametricImage& img, const Polygon& lesion);

/// Full 72-entry canonical feature vector for one mass. contour_features
/// are the nine morphometric values (computed once from the contour).
FeatureVector assemble_feature_vector(const ParametricMapSet& maps,
                                      const AnnotationSet& ann,
                                      const std::vector<double>& contour_features);

} // namespace nakascan
