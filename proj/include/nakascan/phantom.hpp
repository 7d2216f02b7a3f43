#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include "nakascan/data_model.hpp"
#include "nakascan/nakagami.hpp"

namespace nakascan {

/// Exact Nakagami sampling: intensity ~ Gamma(m, omega/m), envelope is
/// its square root. Deterministic per seed.
std::vector<double> sample_nakagami_envelope(const NakagamiParams& p, std::size_t n,
                                             std::uint64_t seed);

struct SmoothEllipse {
    double semi_axis_x_mm = 2.0; // lateral
    double semi_axis_y_mm = 1.5; // axial
    std::size_t vertices = 64;
};

struct SpiculatedStar {
    double base_radius_mm = 1.8;
    std::size_t spikes = 10;
    double amplitude = 0.25;  // relative radial modulation
    double axial_scale = 1.0; // squashes the star along the beam axis
    std::size_t vertices = 144;
};

using LesionShape = std::variant<SmoothEllipse, SpiculatedStar>;

Polygon make_lesion_contour(const LesionShape& shape, const Point2& center_mm);

struct SceneSpec {
    std::size_t rows = 364;
    std::size_t cols = 70;
    double sampling_rate_hz = 20e6;
    double sound_speed_m_s = 1540.0;
    double lateral_spacing_mm = 0.2;
    NakagamiParams background{1.0, 1.0};
    NakagamiParams lesion{0.6, 0.7};
    LesionShape shape = SmoothEllipse{};
    Point2 lesion_center_mm{7.0, 5.6}; // x lateral, y axial
    double shadow_multiplier = 1.0;    // omega factor below the lesion, (0,1]
    std::uint64_t seed = 1;
    std::string mass_id = "phantom";
    MassLabel label = MassLabel::Benign;

    double axial_spacing_mm() const { return sound_speed_m_s / (2.0 * sampling_rate_hz) * 1000.0; }
    FrameGeometry geometry() const;
};

/// Per-pixel envelope sampling from the region's (m, omega), with the
/// shadow multiplier applied below the lesion, plus the auto-derived
/// nine-region annotation.
std::pair<EnvelopeImage, AnnotationSet> synthesize_scene(const SceneSpec& spec);

/// Geometric stand-in for the radiologist's nine region traces: tumor is
/// the contour; anterior/posterior bands are bounding-box-width rectangles
/// of half the lesion height; the left/right columns mirror the tumor
/// column one bounding-box width to each side.
std::map<std::string, Polygon> derive_rois(const Polygon& lesion_contour,
                                           double image_width_mm, double image_height_mm);

/// Optional RF modulation of a synthetic envelope (envelope x carrier),
/// for exercising envelope detection.
RfFrame modulate_rf(const EnvelopeImage& env, double carrier_fraction_of_nyquist = 0.5);

struct ClassRecipe {
    std::size_t count = 0;
    // uniform ranges
    double m_lo = 0.0, m_hi = 0.0;
    double omega_lo = 0.0, omega_hi = 0.0;
    double shadow_lo = 1.0, shadow_hi = 1.0;
    bool spiculated = false;
    double spike_amplitude_lo = 0.0, spike_amplitude_hi = 0.0;
    double aspect_lo = 0.0, aspect_hi = 0.0; // lesion axial/lateral extent ratio
};

struct CohortSpec {
    ClassRecipe benign;
    ClassRecipe malignant;
    std::uint64_t seed = 42;
    SceneSpec scene_template; // geometry and background shared by all masses

    static CohortSpec defaults();
    void validate() const;
};

struct CohortEntry {
    std::string mass_id;
    MassLabel label;
    std::filesystem::path envelope_path;
    std::filesystem::path annotation_path;
    NakagamiParams lesion_truth;
    double shadow_multiplier = 1.0;
};

struct CohortManifest {
    std::vector<CohortEntry> entries;
};

/// Writes one envelope + annotation pair per mass plus manifest.json.
/// Every artifact is a pure function of (spec, seed).
CohortManifest generate_cohort(const CohortSpec& spec, const std::filesystem::path& out_dir);

SceneSpec scene_for_mass(const CohortSpec& spec, std::size_t mass_index);

} // namespace nakascan
