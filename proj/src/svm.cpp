#include "nakascan/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nakascan/rng.hpp"

namespace nakascan {

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("Standardizer: no rows");
    const std::size_t p = rows.front().size();
    Standardizer s;
    s.mean.assign(p, 0.0);
    s.sd.assign(p, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < p; ++j) s.mean[j] += r[j];
    for (double& m : s.mean) m /= static_cast<double>(rows.size());
    for (const auto& r : rows)
        for (std::size_t j = 0; j < p; ++j) {
            const double d = r[j] - s.mean[j];
            s.sd[j] += d * d;
        }
    for (double& v : s.sd) {
        v = std::sqrt(v / static_cast<double>(rows.size()));
        if (!(v > 0.0))
            throw std::invalid_argument("Standardizer: constant feature (sd = 0)");
    }
    return s;
}

std::vector<double> Standardizer::apply(const std::vector<double>& row) const {
    if (row.size() != mean.size())
        throw std::invalid_argument("Standardizer: dimension mismatch");
    std::vector<double> z(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) z[j] = (row[j] - mean[j]) / sd[j];
    return z;
}

std::vector<std::vector<double>> Standardizer::apply_all(
    const std::vector<std::vector<double>>& rows) const {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(apply(r));
    return out;
}

double LinearSvmModel::score(const std::vector<double>& x) const {
    if (x.size() != weights.size())
        throw std::invalid_argument("LinearSvmModel: dimension mismatch");
    double s = bias;
    for (std::size_t j = 0; j < x.size(); ++j) s += weights[j] * x[j];
    return s;
}

LinearSvmModel train_linear_svm(const std::vector<std::vector<double>>& x,
                                const std::vector<int>& y, double c, double tol,
                                std::size_t max_epochs) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw std::invalid_argument("train_linear_svm: need at least 2 labelled samples");
    if (!(c > 0.0)) throw std::invalid_argument("train_linear_svm: C must be > 0");
    bool has_pos = false, has_neg = false;
    for (int yi : y) {
        if (yi == 1) has_pos = true;
        else if (yi == -1) has_neg = true;
        else throw std::invalid_argument("train_linear_svm: labels must be +-1");
    }
    if (!has_pos || !has_neg)
        throw std::invalid_argument("train_linear_svm: single-class input");

    const std::size_t p = x.front().size();
    // augmented representation: x_i -> (x_i, 1), so the bias is the last
    // weight and shares the L2 regularizer
    std::vector<double> qii(n);
    for (std::size_t i = 0; i < n; ++i) {
        double q = 1.0; // augmented unit feature
        for (double v : x[i]) q += v * v;
        qii[i] = q;
    }

    std::vector<double> w(p + 1, 0.0);
    std::vector<double> alpha(n, 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(0x5afe5eedULL); // fixed stream: training is deterministic

    for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
        rng.shuffle(order);
        double max_pg = 0.0;
        for (std::size_t idx : order) {
            const auto& xi = x[idx];
            const double yi = static_cast<double>(y[idx]);
            double wx = w[p];
            for (std::size_t j = 0; j < p; ++j) wx += w[j] * xi[j];
            const double g = yi * wx - 1.0; // dual gradient

            double pg = g; // projected gradient
            if (alpha[idx] <= 0.0) pg = std::min(g, 0.0);
            else if (alpha[idx] >= c) pg = std::max(g, 0.0);
            max_pg = std::max(max_pg, std::abs(pg));
            if (pg == 0.0) continue;

            const double old = alpha[idx];
            alpha[idx] = std::clamp(old - g / qii[idx], 0.0, c);
            const double delta = (alpha[idx] - old) * yi;
            if (delta != 0.0) {
                for (std::size_t j = 0; j < p; ++j) w[j] += delta * xi[j];
                w[p] += delta;
            }
        }
        if (max_pg < tol) break;
    }

    LinearSvmModel model;
    model.weights.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
    model.bias = w[p];
    return model;
}

double svm_objective(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     double c, const LinearSvmModel& model) {
    double obj = 0.5 * model.bias * model.bias;
    for (double wj : model.weights) obj += 0.5 * wj * wj;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double margin = static_cast<double>(y[i]) * model.score(x[i]);
        obj += c * std::max(0.0, 1.0 - margin);
    }
    return obj;
}

double decision_score(const ModelArtifact& artifact, const FeatureVector& fv) {
    artifact.validate();
    double s = artifact.bias;
    for (std::size_t j = 0; j < artifact.selected_features.size(); ++j) {
        const double raw = fv.at(artifact.selected_features[j]); // throws on missing
        s += artifact.weights[j] * (raw - artifact.standardizer_mean[j]) / artifact.standardizer_sd[j];
    }
    return s;
}

std::vector<std::size_t> stratified_fold_assignment(const std::vector<int>& y,
                                                    std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("stratified folds: need folds >= 2");
    std::vector<std::size_t> assignment(y.size());
    std::size_t deal = 0; // carried across classes to keep fold sizes balanced
    for (int cls : {1, -1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] == cls) members.push_back(i);
        if (members.size() < folds)
            throw std::invalid_argument("stratified folds: a class has fewer members than folds");
        Rng rng = Rng::substream(seed, cls == 1 ? 1 : 2);
        rng.shuffle(members);
        for (std::size_t k = 0; k < members.size(); ++k)
            assignment[members[k]] = (deal++) % folds;
    }
    return assignment;
}

PooledScores stratified_kfold_scores(const FeatureTable& table,
                                     const std::vector<std::size_t>& feature_subset,
                                     std::size_t folds, std::uint64_t seed, double c) {
    const std::vector<int> y = table.labels_pm1();
    const auto assignment = stratified_fold_assignment(y, folds, seed);

    std::vector<std::vector<double>> x(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j : feature_subset)
            x[i].push_back(table.rows[i].values()[j]);

    PooledScores pooled;
    pooled.scores.assign(table.size(), 0.0);
    pooled.labels = y;
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
        for (std::size_t i = 0; i < table.size(); ++i)
            if (assignment[i] == fold)
                pooled.scores[i] = model.score(std_fit.apply(x[i]));
    }
    return pooled;
}

RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw std::invalid_argument("roc_auc: bad input sizes");
    std::size_t npos = 0, nneg = 0;
    for (int l : labels) (l == 1 ? npos : nneg)++;
    if (npos == 0 || nneg == 0)
        throw std::invalid_argument("roc_auc: single-class input");

    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve roc;
    roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < idx.size()) {
        const double s = scores[idx[i]];
        std::size_t dtp = 0, dfp = 0;
        while (i < idx.size() && scores[idx[i]] == s) {
            (labels[idx[i]] == 1 ? dtp : dfp)++;
            ++i;
        }
        const double tpr0 = static_cast<double>(tp) / static_cast<double>(npos);
        tp += dtp;
        fp += dfp;
        const double tpr1 = static_cast<double>(tp) / static_cast<double>(npos);
        const double dfpr = static_cast<double>(dfp) / static_cast<double>(nneg);
        auc += dfpr * 0.5 * (tpr0 + tpr1); // trapezoid; ties step diagonally
        roc.points.push_back({s, static_cast<double>(fp) / static_cast<double>(nneg), tpr1});
    }
    roc.points.push_back({-std::numeric_limits<double>::infinity(), 1.0, 1.0});
    roc.auc = auc;
    return roc;
}

ThresholdReport tune_threshold(const std::vector<double>& scores,
                               const std::vector<int>& labels, ThresholdPolicy policy) {
    if (scores.size() != labels.size() || scores.empty())
        throw std::invalid_argument("tune_threshold: bad input sizes");
    std::size_t npos = 0, nneg = 0;
    for (int l : labels) (l == 1 ? npos : nneg)++;
    if (npos == 0 || nneg == 0)
        throw std::invalid_argument("tune_threshold: single-class input");

    std::vector<double> distinct = scores;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> candidates;
    candidates.push_back(std::numeric_limits<double>::infinity());
    for (std::size_t i = distinct.size(); i-- > 1;)
        candidates.push_back(0.5 * (distinct[i - 1] + distinct[i]));
    candidates.push_back(-std::numeric_limits<double>::infinity());

    ThresholdReport report;
    for (double t : candidates) {
        ThresholdRow row;
        row.threshold = t;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            const bool call_malignant = scores[i] >= t;
            if (labels[i] == 1) (call_malignant ? row.tp : row.fn)++;
            else (call_malignant ? row.fp : row.tn)++;
        }
        row.sensitivity = static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fn);
        row.specificity = static_cast<double>(row.tn) / static_cast<double>(row.tn + row.fp);
        row.accuracy = static_cast<double>(row.tp + row.tn) / static_cast<double>(scores.size());
        report.rows.push_back(row);
    }

    auto better = [&](const ThresholdRow& a, const ThresholdRow& b) {
        // higher accuracy wins; tie -> higher threshold
        if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
        return a.threshold > b.threshold;
    };

    std::size_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const ThresholdRow& row = report.rows[i];
        if (policy == ThresholdPolicy::ZeroFnMaxAccuracy && row.fn != 0) continue;
        if (!have || better(row, report.rows[best])) {
            best = i;
            have = true;
        }
    }
    // the -inf row always has FN = 0, so a best row always exists
    report.chosen = best;
    return report;
}

} // namespace nakascan
