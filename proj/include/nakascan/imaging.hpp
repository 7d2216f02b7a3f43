#pragma once

#include <array>
#include <cstddef>
#include <filesystem>

#include "nakascan/data_model.hpp"
#include "nakascan/nakagami.hpp"

namespace nakascan {

/// Sliding-window layout for one envelope image. Step is one axial sample
/// by one lateral line; only fully interior windows are planned.
struct WindowPlan {
    double window_mm = 0.0;
    std::size_t window_rows = 0; // axial extent, pixels
    std::size_t window_cols = 0; // lateral extent, pixels
    std::size_t step_rows = 1;
    std::size_t step_cols = 1;
    std::size_t out_rows = 0;
    std::size_t out_cols = 0;
    double axial_spacing_mm = 0.0;
    double lateral_spacing_mm = 0.0;

    std::size_t samples_per_window() const { return window_rows * window_cols; }
};

WindowPlan plan_windows(const FrameGeometry& geometry, std::size_t env_rows,
                        std::size_t env_cols, double window_mm);

/// All seven parameter maps plus a QC count of failed (all-zero-window)
/// estimates, which are filled with the clamp values.
struct ParametricMapSet {
    std::array<ParametricImage, 7> maps; // indexed in kAllMapKinds order
    std::size_t failed_pixels = 0;

    const ParametricImage& map(MapKind k) const;
};

ParametricMapSet generate_maps(const EnvelopeImage& env, const WindowPlan& plan);

enum class ImageExportFormat { RawF32, Pgm8 };

/// RawF32 writes exact values plus a JSON sidecar; Pgm8 writes a min-max
/// quantized binary P5 view (constant images map to level 128).
void export_image(const ParametricImage& img, const std::filesystem::path& path,
                  ImageExportFormat format);

ParametricImage import_raw_image(const std::filesystem::path& path);

} // namespace nakascan
