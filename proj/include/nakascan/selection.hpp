#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nakascan/features.hpp"

namespace nakascan {

/// Outcome of RFE-CV: full elimination-reverse ranking, the CV accuracy
/// curve over subset sizes, and the selected prefix.
struct SelectionResult {
    std::vector<std::string> ranking;   // best first
    std::vector<double> subset_scores;  // subset_scores[k-1] = top-k CV accuracy
    std::vector<std::string> selected;  // top-k of ranking, argmax score (tie -> smallest k)
    std::size_t folds = 0;
    std::uint64_t seed = 0;
};

/// Mean stratified-CV accuracy of a linear SVM on the given feature
/// subset (canonical indices). Standardizers are fit per training fold.
double cross_val_score(const FeatureTable& table,
                       const std::vector<std::size_t>& feature_subset,
                       std::size_t folds, std::uint64_t seed, double c = 1.0);

/// Recursive feature elimination ranking: refit a linear SVM on the
/// standardized full table and drop the smallest-|weight| feature, one
/// per iteration (tie -> the higher canonical index goes first; constant
/// features are eliminated before anything else). Returns canonical
/// indices, best ranked first.
std::vector<std::size_t> rfe_rank(const FeatureTable& table, double c = 1.0);

SelectionResult rfecv_select(const FeatureTable& table, std::size_t folds,
                             std::uint64_t seed, double c = 1.0);

} // namespace nakascan
