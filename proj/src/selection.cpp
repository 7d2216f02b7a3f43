#include "nakascan/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nakascan/svm.hpp"

namespace nakascan {

double cross_val_score(const FeatureTable& table,
                       const std::vector<std::size_t>& feature_subset,
                       std::size_t folds, std::uint64_t seed, double c) {
    if (feature_subset.empty())
        throw std::invalid_argument("cross_val_score: empty feature subset");
    const std::vector<int> y = table.labels_pm1();
    const auto assignment = stratified_fold_assignment(y, folds, seed);

    std::vector<std::vector<double>> x(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j : feature_subset)
            x[i].push_back(table.rows[i].values()[j]);

    double acc_sum = 0.0;
    for (std::size_t fold = 0; fold < folds; ++fold) {
        std::vector<std::vector<double>> xtr;
        std::vector<int> ytr;
        for (std::size_t i = 0; i < table.size(); ++i)
            if (assignment[i] != fold) {
                xtr.push_back(x[i]);
                ytr.push_back(y[i]);
            }
        const Standardizer std_fit = Standardizer::fit(xtr);
        const LinearSvmModel model = train_linear_svm(std_fit.apply_all(xtr), ytr, c);
        std::size_t correct = 0, total = 0;
        for (std::size_t i = 0; i < table.size(); ++i)
            if (assignment[i] == fold) {
                const double s = model.score(std_fit.apply(x[i]));
                if ((s >= 0.0 ? 1 : -1) == y[i]) ++correct;
                ++total;
            }
        acc_sum += static_cast<double>(correct) / static_cast<double>(total);
    }
    return acc_sum / static_cast<double>(folds);
}

std::vector<std::size_t> rfe_rank(const FeatureTable& table, double c) {
    const std::size_t p = kFeatureCount;
    if (table.size() < 2) throw std::invalid_argument("rfe_rank: need at least 2 rows");
    const std::vector<int> y = table.labels_pm1();

    std::vector<std::size_t> remaining(p);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::size_t> eliminated; // first eliminated = least important

    // constant features cannot be standardized; drop them first
    // (higher canonical index first, mirroring the tie rule)
    for (std::size_t j = p; j-- > 0;) {
        const auto col = table.column(j);
        const bool constant = std::all_of(col.begin(), col.end(),
                                          [&](double v) { return v == col.front(); });
        if (constant) {
            eliminated.push_back(j);
            remaining.erase(std::find(remaining.begin(), remaining.end(), j));
        }
    }

    while (remaining.size() > 1) {
        std::vector<std::vector<double>> x(table.size());
        for (std::size_t i = 0; i < table.size(); ++i)
            for (std::size_t j : remaining)
                x[i].push_back(table.rows[i].values()[j]);
        const Standardizer std_fit = Standardizer::fit(x);
        const LinearSvmModel model = train_linear_svm(std_fit.apply_all(x), y, c);

        // smallest |weight| goes; ties keep the lower canonical index
        std::size_t worst = 0;
        for (std::size_t k = 1; k < remaining.size(); ++k) {
            const double wk = std::abs(model.weights[k]);
            const double ww = std::abs(model.weights[worst]);
            if (wk < ww || (wk == ww && remaining[k] > remaining[worst])) worst = k;
        }
        eliminated.push_back(remaining[worst]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    eliminated.push_back(remaining.front());

    std::reverse(eliminated.begin(), eliminated.end()); // best first
    return eliminated;
}

SelectionResult rfecv_select(const FeatureTable& table, std::size_t folds,
                             std::uint64_t seed, double c) {
    const auto ranking = rfe_rank(table, c);

    SelectionResult result;
    result.folds = folds;
    result.seed = seed;
    for (std::size_t j : ranking)
        result.ranking.push_back(canonical_feature_names()[j]);

    std::size_t best_k = 1;
    double best_score = -1.0;
    for (std::size_t k = 1; k <= ranking.size(); ++k) {
        std::vector<std::size_t> subset(ranking.begin(),
                                        ranking.begin() + static_cast<std::ptrdiff_t>(k));
        double score;
        try {
            score = cross_val_score(table, subset, folds, seed, c);
        } catch (const std::invalid_argument&) {
            score = 0.0; // constant feature in a fold: unusable subset
        }
        result.subset_scores.push_back(score);
        if (score > best_score) { // strict: ties keep the smallest k
            best_score = score;
            best_k = k;
        }
    }
    result.selected.assign(result.ranking.begin(),
                           result.ranking.begin() + static_cast<std::ptrdiff_t>(best_k));
    return result;
}

} // namespace nakascan
