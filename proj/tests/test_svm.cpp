#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "nakascan/features.hpp"
#include "nakascan/rng.hpp"
#include "nakascan/svm.hpp"

using namespace nakascan;

namespace {

// projected subgradient descent on the same augmented-bias objective,
// used as an independent optimization oracle
LinearSvmModel subgradient_oracle(const std::vector<std::vector<double>>& x,
                                  const std::vector<int>& y, double c,
                                  std::size_t iters = 400000) {
    const std::size_t p = x[0].size();
    std::vector<double> w(p, 0.0);
    double b = 0.0;
    std::vector<double> best_w = w;
    double best_b = b, best_obj = svm_objective(x, y, c, {w, b});
    for (std::size_t t = 1; t <= iters; ++t) {
        const double lr = 1.0 / std::sqrt(static_cast<double>(t));
        std::vector<double> grad(w);
        double gb = b;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double margin = b;
            for (std::size_t j = 0; j < p; ++j) margin += w[j] * x[i][j];
            if (y[i] * margin < 1.0) {
                for (std::size_t j = 0; j < p; ++j) grad[j] -= c * y[i] * x[i][j];
                gb -= c * y[i];
            }
        }
        for (std::size_t j = 0; j < p; ++j) w[j] -= lr * grad[j] / x.size();
        b -= lr * gb / x.size();
        const double obj = svm_objective(x, y, c, {w, b});
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
    }
    return {best_w, best_b};
}

FeatureTable table_from_scores(const std::vector<double>& v0, const std::vector<int>& y) {
    FeatureTable t;
    Rng rng(1234);
    for (std::size_t i = 0; i < v0.size(); ++i) {
        std::vector<double> row(kFeatureCount);
        for (auto& x : row) x = rng.normal();
        row[0] = v0[i];
        t.rows.emplace_back("m" + std::to_string(i),
                            y[i] > 0 ? MassLabel::Malignant : MassLabel::Benign, row);
    }
    return t;
}

} // namespace

TEST_CASE("standardizer hand example") {
    const Standardizer s = Standardizer::fit({{1.0}, {3.0}});
    CHECK(s.mean[0] == doctest::Approx(2.0));
    CHECK(s.sd[0] == doctest::Approx(1.0));
    CHECK(s.apply({1.0})[0] == doctest::Approx(-1.0));
    CHECK(s.apply({3.0})[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(Standardizer::fit({{2.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("standardized training data has zero mean unit sd") {
    Rng rng(9);
    std::vector<std::vector<double>> x(40, std::vector<double>(3));
    for (auto& row : x)
        for (auto& v : row) v = rng.uniform(-5.0, 5.0);
    const Standardizer s = Standardizer::fit(x);
    const auto z = s.apply_all(x);
    for (std::size_t j = 0; j < 3; ++j) {
        double sum = 0.0, sum2 = 0.0;
        for (const auto& row : z) {
            sum += row[j];
            sum2 += row[j] * row[j];
        }
        CHECK(std::abs(sum / 40.0) < 1e-12);
        CHECK(sum2 / 40.0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("separable 1-D problem") {
    const std::vector<std::vector<double>> x = {{-2.0}, {2.0}};
    const std::vector<int> y = {-1, 1};
    const LinearSvmModel m = train_linear_svm(x, y, 1.0);
    CHECK(m.weights[0] > 0.0);
    CHECK(m.score(x[0]) < 0.0);
    CHECK(m.score(x[1]) > 0.0);
}

TEST_CASE("label flip negates the model") {
    Rng rng(3);
    std::vector<std::vector<double>> x(30, std::vector<double>(4));
    std::vector<int> y(30);
    for (std::size_t i = 0; i < 30; ++i) {
        for (auto& v : x[i]) v = rng.normal();
        y[i] = i < 15 ? 1 : -1;
        x[i][0] += y[i]; // some signal
    }
    std::vector<int> yneg(y);
    for (auto& v : yneg) v = -v;
    const LinearSvmModel a = train_linear_svm(x, y, 1.0);
    const LinearSvmModel b = train_linear_svm(x, yneg, 1.0);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(a.weights[j] == doctest::Approx(-b.weights[j]).epsilon(1e-9));
    CHECK(a.bias == doctest::Approx(-b.bias).epsilon(1e-9));
}

TEST_CASE("objective matches a subgradient oracle") {
    Rng rng(19);
    std::vector<std::vector<double>> x(20, std::vector<double>(5));
    std::vector<int> y(20);
    for (std::size_t i = 0; i < 20; ++i) {
        for (auto& v : x[i]) v = rng.normal();
        y[i] = i % 2 == 0 ? 1 : -1;
        x[i][1] += 0.5 * y[i];
    }
    const LinearSvmModel trained = train_linear_svm(x, y, 1.0);
    const LinearSvmModel reference = subgradient_oracle(x, y, 1.0);
    const double obj_t = svm_objective(x, y, 1.0, trained);
    const double obj_r = svm_objective(x, y, 1.0, reference);
    CHECK(obj_t <= obj_r + 1e-4 * std::abs(obj_r));
    CHECK(std::abs(obj_t - obj_r) / std::abs(obj_r) < 1e-3);
    // sanity bound: trained objective no worse than the zero model
    CHECK(obj_t <= svm_objective(x, y, 1.0, {std::vector<double>(5, 0.0), 0.0}));
}

TEST_CASE("degenerate training inputs") {
    const std::vector<std::vector<double>> x = {{1.0}, {2.0}};
    CHECK_THROWS_AS(train_linear_svm(x, {1, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(train_linear_svm(x, {1, -1}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(train_linear_svm(x, {1, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("decision score of a saved artifact") {
    ModelArtifact a;
    a.selected_features = {"morph.solidity", "m.echogenicity"};
    a.standardizer_mean = {0.9, 1.2};
    a.standardizer_sd = {0.1, 0.4};
    a.weights = {2.0, -1.0};
    a.bias = 0.25;

    std::vector<double> values(kFeatureCount, 0.0);
    values[canonical_feature_index("morph.solidity")] = 0.9;
    values[canonical_feature_index("m.echogenicity")] = 1.2;
    const FeatureVector at_means("x", MassLabel::Benign, values);
    CHECK(decision_score(a, at_means) == doctest::Approx(0.25));

    values[canonical_feature_index("morph.solidity")] = 1.0;
    const FeatureVector shifted("x", MassLabel::Benign, values);
    CHECK(decision_score(a, shifted) == doctest::Approx(0.25 + 2.0 * 0.1 / 0.1));
}

TEST_CASE("stratified fold arithmetic at the cohort shape") {
    std::vector<int> y(130, -1);
    for (int i = 0; i < 26; ++i) y[static_cast<std::size_t>(i) * 5] = 1;
    const auto folds = stratified_fold_assignment(y, 5, 7);
    std::vector<int> size(5, 0), pos(5, 0);
    for (std::size_t i = 0; i < 130; ++i) {
        ++size[folds[i]];
        if (y[i] > 0) ++pos[folds[i]];
    }
    for (int f = 0; f < 5; ++f) {
        CHECK(size[f] == 26);
        CHECK(pos[f] >= 5);
        CHECK(pos[f] <= 6);
    }
    CHECK(stratified_fold_assignment(y, 5, 7) == folds); // deterministic

    std::vector<int> tiny = {1, 1, -1, -1};
    CHECK_THROWS_AS(stratified_fold_assignment(tiny, 3, 1), std::invalid_argument);
}

TEST_CASE("pooled out-of-fold scores") {
    std::vector<double> v0(60);
    std::vector<int> y(60);
    Rng rng(88);
    for (std::size_t i = 0; i < 60; ++i) {
        y[i] = i < 20 ? 1 : -1;
        v0[i] = y[i] * 2.0 + rng.normal() * 0.1;
    }
    const FeatureTable t = table_from_scores(v0, y);
    const PooledScores p = stratified_kfold_scores(t, {0}, 5, 3, 1.0);
    CHECK(p.scores.size() == 60);
    CHECK(p.labels.size() == 60);
    const PooledScores p2 = stratified_kfold_scores(t, {0}, 5, 3, 1.0);
    CHECK(p.scores == p2.scores);

    // train-only standardizer: recompute one fold by hand
    const auto assignment = stratified_fold_assignment(t.labels_pm1(), 5, 3);
    std::vector<std::vector<double>> xtr;
    std::vector<int> ytr;
    for (std::size_t i = 0; i < 60; ++i)
        if (assignment[i] != 0) {
            xtr.push_back({t.rows[i].values()[0]});
            ytr.push_back(y[i]);
        }
    const Standardizer s = Standardizer::fit(xtr);
    const LinearSvmModel m = train_linear_svm(s.apply_all(xtr), ytr, 1.0);
    for (std::size_t i = 0; i < 60; ++i)
        if (assignment[i] == 0)
            CHECK(p.scores[i] == doctest::Approx(m.score(s.apply({t.rows[i].values()[0]}))));
}

TEST_CASE("roc auc values") {
    SUBCASE("perfect separation") {
        const RocCurve r = roc_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, -1, -1});
        CHECK(r.auc == doctest::Approx(1.0));
    }
    SUBCASE("all ties") {
        const RocCurve r = roc_auc({0.5, 0.5, 0.5, 0.5}, {1, 1, -1, -1});
        CHECK(r.auc == doctest::Approx(0.5));
    }
    SUBCASE("single class rejected") {
        CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), std::invalid_argument);
    }
    SUBCASE("pairwise U-statistic oracle") {
        Rng rng(123);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> s(50);
            std::vector<int> y(50);
            for (std::size_t i = 0; i < 50; ++i) {
                s[i] = std::round(rng.uniform(0.0, 10.0)) / 10.0; // force some ties
                y[i] = rng.uniform() < 0.4 ? 1 : -1;
            }
            if (std::count(y.begin(), y.end(), 1) == 0 ||
                std::count(y.begin(), y.end(), -1) == 0)
                continue;
            double u = 0.0;
            std::size_t np = 0, nn = 0;
            for (std::size_t i = 0; i < 50; ++i) {
                if (y[i] < 0) continue;
                ++np;
                for (std::size_t j = 0; j < 50; ++j) {
                    if (y[j] > 0) continue;
                    if (s[i] > s[j]) u += 1.0;
                    else if (s[i] == s[j]) u += 0.5;
                }
            }
            nn = 50 - np;
            const double u_stat = u / (static_cast<double>(np) * static_cast<double>(nn));
            CHECK(std::abs(roc_auc(s, y).auc - u_stat) < 1e-12);
        }
    }
    SUBCASE("invariance under increasing transforms") {
        Rng rng(321);
        std::vector<double> s(30);
        std::vector<int> y(30);
        for (std::size_t i = 0; i < 30; ++i) {
            s[i] = rng.normal();
            y[i] = i % 3 == 0 ? 1 : -1;
        }
        const double base = roc_auc(s, y).auc;
        std::vector<double> es(s), as(s);
        for (auto& v : es) v = std::exp(v);
        for (auto& v : as) v = 3.0 * v + 11.0;
        CHECK(std::abs(roc_auc(es, y).auc - base) < 1e-12);
        CHECK(std::abs(roc_auc(as, y).auc - base) < 1e-12);
    }
}

TEST_CASE("roc curve structure") {
    const RocCurve r = roc_auc({0.9, 0.8, 0.2, 0.1}, {1, -1, 1, -1});
    // as threshold decreases both rates are non-decreasing
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        CHECK(r.points[i].fpr >= r.points[i - 1].fpr - 1e-15);
        CHECK(r.points[i].tpr >= r.points[i - 1].tpr - 1e-15);
    }
    CHECK(r.points.front().fpr == 0.0);
    CHECK(r.points.front().tpr == 0.0);
    CHECK(r.points.back().fpr == 1.0);
    CHECK(r.points.back().tpr == 1.0);
}

TEST_CASE("threshold tuning hand example") {
    const std::vector<double> s = {0.9, 0.8, 0.4, 0.1};
    const std::vector<int> y = {1, 1, -1, -1};
    const ThresholdReport rep = tune_threshold(s, y, ThresholdPolicy::ZeroFnMaxAccuracy);
    const ThresholdRow& row = rep.rows[rep.chosen];
    CHECK(row.fn == 0);
    CHECK(row.fp == 0);
    CHECK(row.sensitivity == doctest::Approx(1.0));
    CHECK(row.specificity == doctest::Approx(1.0));
    CHECK(row.accuracy == doctest::Approx(1.0));
    CHECK(row.threshold > 0.4);
    CHECK(row.threshold < 0.8);
}

TEST_CASE("threshold report identities and sweep ends") {
    Rng rng(7);
    std::vector<double> s(40);
    std::vector<int> y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        s[i] = rng.normal();
        y[i] = i < 10 ? 1 : -1;
    }
    const ThresholdReport rep = tune_threshold(s, y, ThresholdPolicy::FullSweep);
    for (const auto& r : rep.rows) {
        CHECK(r.fn + r.tp == 10);
        CHECK(r.tn + r.fp == 30);
        CHECK(r.sensitivity == doctest::Approx(r.tp / 10.0));
        CHECK(r.specificity == doctest::Approx(r.tn / 30.0));
        CHECK(r.accuracy == doctest::Approx((r.tp + r.tn) / 40.0));
    }
    // lowest threshold: everything called positive
    const ThresholdRow& low = rep.rows.back();
    CHECK(low.fn == 0);
    CHECK(low.specificity == doctest::Approx(0.0));

    // zero-fn: max accuracy among fn == 0, tie -> higher threshold
    const ThresholdReport zf = tune_threshold(s, y, ThresholdPolicy::ZeroFnMaxAccuracy);
    const ThresholdRow& chosen = zf.rows[zf.chosen];
    CHECK(chosen.fn == 0);
    for (const auto& r : zf.rows)
        if (r.fn == 0) {
            CHECK(chosen.accuracy >= r.accuracy);
            if (r.accuracy == chosen.accuracy) CHECK(chosen.threshold >= r.threshold);
        }
}
