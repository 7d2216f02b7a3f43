#pragma once

#include <filesystem>

#include "nakascan/data_model.hpp"
#include "nakascan/features.hpp"
#include "nakascan/selection.hpp"
#include "nakascan/svm.hpp"

namespace nakascan {

struct CohortManifest; // phantom.hpp

/// RF container: `<stem>.rfraw` little-endian f32 raster (line-major:
/// each lateral line's axial samples are contiguous) plus a
/// `<stem>.rfmeta.json` sidecar. See FORMATS.md.
RfFrame load_rf_container(const std::filesystem::path& raw_path);
void save_rf_container(const RfFrame& frame, const std::filesystem::path& raw_path);

/// Envelope images reuse the RF container format with kind = "envelope".
EnvelopeImage load_envelope(const std::filesystem::path& raw_path);
void save_envelope(const EnvelopeImage& env, const std::filesystem::path& raw_path);

/// True when the sidecar declares kind = "envelope".
bool container_is_envelope(const std::filesystem::path& raw_path);

AnnotationSet load_annotations(const std::filesystem::path& path);
void save_annotations(const AnnotationSet& ann, const std::filesystem::path& path);

/// CSV: mass_id, label, then the 72 canonical columns. Columns may be
/// permuted on disk; reading normalizes to canonical order. Values are
/// written with 9 significant digits.
FeatureTable read_feature_table(const std::filesystem::path& path);
void write_feature_table(const FeatureTable& table, const std::filesystem::path& path);

ModelArtifact load_model(const std::filesystem::path& path);
void save_model(const ModelArtifact& artifact, const std::filesystem::path& path);

void save_selection(const SelectionResult& result, const std::filesystem::path& path);
SelectionResult load_selection(const std::filesystem::path& path);

void save_roc_csv(const RocCurve& roc, const std::filesystem::path& path);
void save_threshold_csv(const ThresholdReport& report, const std::filesystem::path& path);

void save_manifest(const CohortManifest& manifest, const std::filesystem::path& path);
CohortManifest load_manifest(const std::filesystem::path& path);

} // namespace nakascan
