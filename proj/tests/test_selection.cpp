#include <algorithm>
#include <vector>

#include "doctest.h"
#include "nakascan/rng.hpp"
#include "nakascan/selection.hpp"

using namespace nakascan;

namespace {

// n rows, all 72 columns noise except the listed informative columns,
// which get a class-dependent shift
FeatureTable synthetic_table(std::size_t n_benign, std::size_t n_malignant,
                             const std::vector<std::size_t>& informative, double shift,
                             std::uint64_t seed) {
    FeatureTable t;
    Rng rng(seed);
    const std::size_t n = n_benign + n_malignant;
    for (std::size_t i = 0; i < n; ++i) {
        const bool malignant = i >= n_benign;
        std::vector<double> row(kFeatureCount);
        for (auto& v : row) v = rng.normal();
        for (std::size_t j : informative)
            if (malignant) row[j] += shift;
        t.rows.emplace_back("m" + std::to_string(i),
                            malignant ? MassLabel::Malignant : MassLabel::Benign,
                            std::move(row));
    }
    return t;
}

} // namespace

TEST_CASE("cross_val_score on a separable feature") {
    const FeatureTable t = synthetic_table(30, 30, {4}, 8.0, 2);
    CHECK(cross_val_score(t, {4}, 5, 1, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("cross_val_score at chance level on pure noise") {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const FeatureTable t = synthetic_table(100, 100, {}, 0.0, 500 + seed);
        const double acc = cross_val_score(t, {0, 1, 2}, 5, seed, 1.0);
        if (acc >= 0.35 && acc <= 0.65) ++inside;
    }
    CHECK(inside >= 18);
}

TEST_CASE("cross_val_score preconditions") {
    const FeatureTable t = synthetic_table(10, 3, {0}, 2.0, 1);
    CHECK_THROWS_AS(cross_val_score(t, {0}, 5, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cross_val_score(t, {}, 2, 1, 1.0), std::invalid_argument);
}

TEST_CASE("rfe ranks an informative feature first") {
    int first = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const FeatureTable t = synthetic_table(30, 30, {7}, 6.0, 900 + seed);
        const auto ranking = rfe_rank(t, 1.0);
        CHECK(ranking.size() == kFeatureCount);
        if (ranking.front() == 7) ++first;
    }
    CHECK(first >= 19);
}

TEST_CASE("rfe ranking is a permutation") {
    const FeatureTable t = synthetic_table(20, 20, {1, 2}, 3.0, 5);
    auto ranking = rfe_rank(t, 1.0);
    std::sort(ranking.begin(), ranking.end());
    for (std::size_t i = 0; i < kFeatureCount; ++i) CHECK(ranking[i] == i);
}

TEST_CASE("duplicate columns tie-break to the lower canonical index") {
    FeatureTable t = synthetic_table(24, 24, {3}, 5.0, 77);
    for (auto& row : t.rows) {
        auto values = row.values();
        values[10] = values[3]; // exact duplicate of the informative column
        row = FeatureVector(row.mass_id(), row.label(), std::move(values));
    }
    const auto ranking = rfe_rank(t, 1.0);
    const auto pos = [&](std::size_t j) {
        return std::find(ranking.begin(), ranking.end(), j) - ranking.begin();
    };
    CHECK(pos(3) < pos(10)); // the higher index is eliminated first
}

TEST_CASE("constant features are eliminated first") {
    FeatureTable t = synthetic_table(20, 20, {0}, 5.0, 31);
    for (auto& row : t.rows) {
        auto values = row.values();
        values[40] = 2.5;
        values[41] = -1.0;
        row = FeatureVector(row.mass_id(), row.label(), std::move(values));
    }
    const auto ranking = rfe_rank(t, 1.0);
    // eliminated first = ranked last; higher canonical index goes first
    CHECK(ranking[kFeatureCount - 1] == 41);
    CHECK(ranking[kFeatureCount - 2] == 40);
}

TEST_CASE("rfecv selects the informative subset") {
    const FeatureTable t = synthetic_table(40, 40, {2, 9}, 5.0, 13);
    const SelectionResult r = rfecv_select(t, 5, 3, 1.0);
    CHECK(r.subset_scores.size() == kFeatureCount);
    CHECK(r.selected.size() <= 8);
    const auto& names = canonical_feature_names();
    for (std::size_t j : {std::size_t{2}, std::size_t{9}})
        CHECK(std::find(r.selected.begin(), r.selected.end(), names[j]) != r.selected.end());
    // selected is the prefix of the ranking at the score argmax
    CHECK(std::equal(r.selected.begin(), r.selected.end(), r.ranking.begin()));
    std::size_t best_k = 1;
    double best = -1.0;
    for (std::size_t k = 1; k <= r.subset_scores.size(); ++k)
        if (r.subset_scores[k - 1] > best) {
            best = r.subset_scores[k - 1];
            best_k = k;
        }
    CHECK(r.selected.size() == best_k);
}

TEST_CASE("rfecv is deterministic under a fixed seed") {
    const FeatureTable t = synthetic_table(25, 25, {5}, 4.0, 8);
    const SelectionResult a = rfecv_select(t, 5, 11, 1.0);
    const SelectionResult b = rfecv_select(t, 5, 11, 1.0);
    CHECK(a.ranking == b.ranking);
    CHECK(a.subset_scores == b.subset_scores);
    CHECK(a.selected == b.selected);
}
