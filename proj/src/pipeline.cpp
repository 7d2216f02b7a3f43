#include "nakascan/pipeline.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "nakascan/io.hpp"
#include "nakascan/morpho.hpp"

namespace nakascan {

MassResult process_mass(const EnvelopeImage& env, const AnnotationSet& ann, double window_mm) {
    const WindowPlan plan =
        plan_windows(env.geometry, env.values.rows(), env.values.cols(), window_mm);
    ParametricMapSet maps = generate_maps(env, plan);
    const std::vector<double> contour = morphometric_features(ann.lesion_contour);
    FeatureVector fv = assemble_feature_vector(maps, ann, contour);
    return {std::move(maps), std::move(fv)};
}

FeatureTable extract_features(const CohortManifest& manifest, double window_mm,
                              std::size_t jobs) {
    const std::size_t n = manifest.entries.size();
    std::vector<std::optional<FeatureVector>> rows(n);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                const auto& e = manifest.entries[i];
                const EnvelopeImage env = load_envelope(e.envelope_path);
                const AnnotationSet ann = load_annotations(e.annotation_path);
                rows[i] = process_mass(env, ann, window_mm).features;
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(jobs, n ? n : std::size_t{1}); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    FeatureTable table;
    for (auto& r : rows) table.rows.push_back(std::move(*r));
    return table;
}

EvalOutputs evaluate_cohort(const FeatureTable& table, const EvalConfig& cfg) {
    EvalOutputs out;
    if (cfg.select) {
        out.selection = rfecv_select(table, cfg.folds, cfg.seed, cfg.svm_c);
    } else {
        out.selection.ranking = canonical_feature_names();
        out.selection.selected = canonical_feature_names();
        out.selection.folds = cfg.folds;
        out.selection.seed = cfg.seed;
    }

    std::vector<std::size_t> subset;
    for (const auto& name : out.selection.selected)
        subset.push_back(canonical_feature_index(name));

    out.pooled = stratified_kfold_scores(table, subset, cfg.folds, cfg.seed, cfg.svm_c);
    out.roc = roc_auc(out.pooled.scores, out.pooled.labels);
    out.thresholds = tune_threshold(out.pooled.scores, out.pooled.labels, cfg.policy);

    // deployable model: fit on the full cohort, threshold from pooled
    // out-of-fold scores
    std::vector<std::vector<double>> x(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j : subset)
            x[i].push_back(table.rows[i].values()[j]);
    const Standardizer std_fit = Standardizer::fit(x);
    const LinearSvmModel svm = train_linear_svm(std_fit.apply_all(x), table.labels_pm1(),
                                                cfg.svm_c);
    out.model.selected_features = out.selection.selected;
    out.model.standardizer_mean = std_fit.mean;
    out.model.standardizer_sd = std_fit.sd;
    out.model.weights = svm.weights;
    out.model.bias = svm.bias;
    out.model.decision_threshold = out.thresholds.rows[out.thresholds.chosen].threshold;
    out.model.validate();
    return out;
}

namespace {

const char* policy_name(ThresholdPolicy p) {
    switch (p) {
        case ThresholdPolicy::ZeroFnMaxAccuracy: return "zero-fn";
        case ThresholdPolicy::MaxAccuracy: return "max-acc";
        case ThresholdPolicy::FullSweep: return "sweep";
    }
    return "?";
}

} // namespace

std::string render_report(const EvalOutputs& out, const EvalConfig& cfg) {
    using nlohmann::json;
    json j;
    j["config"]["window_mm"] = cfg.window_mm;
    j["config"]["folds"] = cfg.folds;
    j["config"]["svm_c"] = cfg.svm_c;
    j["config"]["seed"] = cfg.seed;
    j["config"]["threshold_policy"] = policy_name(cfg.policy);
    j["config"]["feature_selection"] = cfg.select;
    j["selected_features"] = out.selection.selected;
    j["auc"] = out.roc.auc;
    json rows = json::array();
    for (const auto& r : out.thresholds.rows) {
        rows.push_back({{"threshold", r.threshold},
                        {"false_negative", r.fn},
                        {"true_negative", r.tn},
                        {"false_positive", r.fp},
                        {"true_positive", r.tp},
                        {"sensitivity", r.sensitivity},
                        {"specificity", r.specificity},
                        {"accuracy", r.accuracy}});
    }
    j["threshold_table"] = rows;
    j["operating_point"] = rows[out.thresholds.chosen];
    return j.dump(2) + "\n";
}

} // namespace nakascan
