#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "nakascan/geometry.hpp"
#include "nakascan/grid.hpp"

namespace nakascan {

enum class MassLabel { Benign, Malignant };

std::string to_string(MassLabel l);
MassLabel mass_label_from_string(const std::string& s);

/// Acquisition geometry shared by RF frames and envelope images.
struct FrameGeometry {
    double sampling_rate_hz = 0.0;
    double sound_speed_m_s = 0.0;
    double axial_spacing_mm = 0.0;   // per row
    double lateral_spacing_mm = 0.0; // per column
};

/// Raw RF sample grid. Rows are axial samples, columns are lateral lines.
struct RfFrame {
    Grid2D samples;
    FrameGeometry geometry;
    std::vector<double> tgc_gain; // one per axial row

    /// Throws std::invalid_argument on any invariant violation.
    void validate() const;
};

/// Detected envelope; inherits the source frame's geometry.
struct EnvelopeImage {
    Grid2D values;
    FrameGeometry geometry;

    void validate() const;
};

enum class MapKind { M, Omega, PreAlpha, AlphaAbs, AlphaPhase, AlphaReal, AlphaImag };

inline constexpr std::array<MapKind, 7> kAllMapKinds = {
    MapKind::M,         MapKind::Omega,     MapKind::PreAlpha, MapKind::AlphaAbs,
    MapKind::AlphaPhase, MapKind::AlphaReal, MapKind::AlphaImag};

/// Canonical lowercase tag, also used in feature names: m, omega,
/// pre_alpha, alpha_abs, alpha_phase, alpha_real, alpha_imag.
std::string map_kind_tag(MapKind k);
MapKind map_kind_from_tag(const std::string& tag);

/// One of the seven sliding-window parameter maps.
struct ParametricImage {
    MapKind kind = MapKind::M;
    Grid2D values;
    double origin_offset_row_px = 0.0; // first window center, envelope coords
    double origin_offset_col_px = 0.0;
    double pixel_spacing_axial_mm = 0.0;
    double pixel_spacing_lateral_mm = 0.0;
    double window_mm = 0.0;

    /// Center of pixel (r, c) in scan-plane mm (x lateral, y axial).
    Point2 pixel_center_mm(std::size_t r, std::size_t c) const;

    void validate() const;
};

inline constexpr std::array<const char*, 9> kRegionNames = {
    "left_anterior",  "left_lateral",  "left_posterior",
    "tumor_anterior", "tumor",         "tumor_posterior",
    "right_anterior", "right_lateral", "right_posterior"};

/// Lesion contour plus the nine analysis regions, all in mm.
struct AnnotationSet {
    std::string mass_id;
    MassLabel label = MassLabel::Benign;
    Polygon lesion_contour;
    std::map<std::string, Polygon> regions;

    void validate() const;
};

/// Everything needed to score a new mass: standardizer, weights, bias
/// and the tuned decision threshold. Higher score means malignant.
struct ModelArtifact {
    std::vector<std::string> selected_features;
    std::vector<double> standardizer_mean;
    std::vector<double> standardizer_sd;
    std::vector<double> weights;
    double bias = 0.0;
    double decision_threshold = 0.0;

    void validate() const;
    bool operator==(const ModelArtifact&) const = default;
};

} // namespace nakascan
