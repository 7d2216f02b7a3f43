#pragma once

#include <cstdint>
#include <vector>

#include "nakascan/data_model.hpp"
#include "nakascan/features.hpp"

namespace nakascan {

/// Per-feature z-score statistics fit on training data only.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> sd; // population sd

    /// Throws on a constant column (sd = 0).
    static Standardizer fit(const std::vector<std::vector<double>>& rows);
    std::vector<double> apply(const std::vector<double>& row) const;
    std::vector<std::vector<double>> apply_all(const std::vector<std::vector<double>>& rows) const;
};

struct LinearSvmModel {
    std::vector<double> weights;
    double bias = 0.0;

    double score(const std::vector<double>& x) const;
};

/// L2-regularized L1-loss (hinge) linear SVM trained by dual coordinate
/// descent. The bias is carried as an augmented unit feature and shares
/// the regularizer (the liblinear convention):
///   min 1/2 (||w||^2 + b^2) + C sum_i max(0, 1 - y_i (w.x_i + b))
/// Deterministic: fixed internal permutation stream.
LinearSvmModel train_linear_svm(const std::vector<std::vector<double>>& x,
                                const std::vector<int>& y, double c,
                                double tol = 1e-8, std::size_t max_epochs = 20000);

/// Primal objective of the trained problem (with the bias term in the
/// regularizer), used by the optimization oracle tests.
double svm_objective(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     double c, const LinearSvmModel& model);

/// Raw decision score of a saved artifact; higher means malignant.
double decision_score(const ModelArtifact& artifact, const FeatureVector& fv);

/// Deterministic stratified k-fold assignment: fold index per sample.
std::vector<std::size_t> stratified_fold_assignment(const std::vector<int>& y,
                                                    std::size_t folds, std::uint64_t seed);

/// Out-of-fold decision scores: every sample scored exactly once by a
/// model trained on the other folds (standardizer fit on train only).
struct PooledScores {
    std::vector<double> scores;
    std::vector<int> labels; // +1 / -1
};

PooledScores stratified_kfold_scores(const FeatureTable& table,
                                     const std::vector<std::size_t>& feature_subset,
                                     std::size_t folds, std::uint64_t seed, double c);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Trapezoidal ROC over all distinct score thresholds; ties step
/// simultaneously, so auc equals the Mann-Whitney U statistic with half
/// credit for ties.
RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

enum class ThresholdPolicy { ZeroFnMaxAccuracy, MaxAccuracy, FullSweep };

struct ThresholdRow {
    double threshold = 0.0;
    std::size_t fn = 0, tn = 0, fp = 0, tp = 0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double accuracy = 0.0;
};

struct ThresholdReport {
    std::vector<ThresholdRow> rows;
    std::size_t chosen = 0; // index into rows
};

/// Sweep thresholds at midpoints between distinct sorted scores plus
/// +-infinity sentinels; a sample is called malignant when
/// score >= threshold.
ThresholdReport tune_threshold(const std::vector<double>& scores,
                               const std::vector<int>& labels, ThresholdPolicy policy);

} // namespace nakascan
