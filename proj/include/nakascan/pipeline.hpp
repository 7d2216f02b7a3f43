#pragma once

#include <cstdint>
#include <string>

#include "nakascan/features.hpp"
#include "nakascan/imaging.hpp"
#include "nakascan/phantom.hpp"
#include "nakascan/regional.hpp"
#include "nakascan/selection.hpp"
#include "nakascan/svm.hpp"

namespace nakascan {

/// Envelope + annotation -> seven maps + one canonical feature row.
struct MassResult {
    ParametricMapSet maps;
    FeatureVector features;
};

MassResult process_mass(const EnvelopeImage& env, const AnnotationSet& ann, double window_mm);

/// Batch feature extraction over a cohort manifest. Row order follows the
/// manifest; `jobs` only controls parallelism, never the result.
FeatureTable extract_features(const CohortManifest& manifest, double window_mm,
                              std::size_t jobs = 1);

struct EvalConfig {
    std::size_t folds = 5;
    double svm_c = 1.0;
    std::uint64_t seed = 7;
    ThresholdPolicy policy = ThresholdPolicy::ZeroFnMaxAccuracy;
    bool select = true; // false: keep all 72 features
    double window_mm = 0.75; // recorded in the report only
};

struct EvalOutputs {
    SelectionResult selection;
    PooledScores pooled;
    RocCurve roc;
    ThresholdReport thresholds;
    ModelArtifact model; // weights from a full-cohort fit, threshold from pooled scores
};

EvalOutputs evaluate_cohort(const FeatureTable& table, const EvalConfig& cfg);

/// Deterministic report bytes (selected features, AUC, threshold table,
/// chosen operating point). Same inputs give identical strings.
std::string render_report(const EvalOutputs& out, const EvalConfig& cfg);

} // namespace nakascan
