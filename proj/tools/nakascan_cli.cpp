// nakascan: phantom cohorts, parametric imaging, feature extraction and
// classification from one binary. Exit codes: 0 ok, 2 validation, 3 IO.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nakascan/envelope.hpp"
#include "nakascan/io.hpp"
#include "nakascan/morpho.hpp"
#include "nakascan/pipeline.hpp"

namespace fs = std::filesystem;
using namespace nakascan;

namespace {

bool log_enabled() {
    const char* v = std::getenv("NAKASCAN_LOG");
    return v && *v && std::string(v) != "0";
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::cerr << "[nakascan] " << msg << "\n";
}

std::vector<double> parse_windows(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        const double w = std::stod(tok, &used);
        if (used != tok.size() || w <= 0.0)
            throw std::invalid_argument("bad window value: " + tok);
        out.push_back(w);
    }
    if (out.empty()) throw std::invalid_argument("no window sizes given");
    return out;
}

ThresholdPolicy parse_policy(const std::string& s) {
    if (s == "zero-fn") return ThresholdPolicy::ZeroFnMaxAccuracy;
    if (s == "max-acc") return ThresholdPolicy::MaxAccuracy;
    if (s == "sweep") return ThresholdPolicy::FullSweep;
    throw std::invalid_argument("unknown threshold policy: " + s);
}

std::string window_dir_name(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "w%g", w);
    return buf;
}

void write_text(const std::string& text, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
}

EnvelopeImage load_envelope_or_rf(const fs::path& path) {
    if (container_is_envelope(path)) return load_envelope(path);
    log_line("RF input: applying TGC and detecting envelope");
    const RfFrame frame = load_rf_container(path);
    return detect_envelope(apply_tgc(frame, TgcPolicy{}));
}

void write_maps(const ParametricMapSet& maps, double window_mm, const fs::path& dir) {
    fs::create_directories(dir);
    for (MapKind k : kAllMapKinds) {
        const auto& img = maps.map(k);
        export_image(img, dir / (map_kind_tag(k) + ".pmap.raw"), ImageExportFormat::RawF32);
        export_image(img, dir / (map_kind_tag(k) + ".pgm"), ImageExportFormat::Pgm8);
    }
    const auto& m = maps.map(MapKind::M);
    std::ostringstream qc;
    qc << "{\n  \"window_mm\": " << window_mm << ",\n  \"rows\": " << m.values.rows()
       << ",\n  \"cols\": " << m.values.cols()
       << ",\n  \"failed_pixels\": " << maps.failed_pixels << "\n}\n";
    write_text(qc.str(), dir / "qc.json");
}

struct EvalFiles {
    EvalOutputs outputs;
};

EvalFiles run_eval(const FeatureTable& table, const EvalConfig& cfg, const fs::path& dir) {
    EvalFiles ef{evaluate_cohort(table, cfg)};
    fs::create_directories(dir);
    save_model(ef.outputs.model, dir / "model.json");
    save_selection(ef.outputs.selection, dir / "selection.json");
    save_roc_csv(ef.outputs.roc, dir / "roc.csv");
    save_threshold_csv(ef.outputs.thresholds, dir / "thresholds.csv");
    write_text(render_report(ef.outputs, cfg), dir / "report.json");
    return ef;
}

void append_sweep_row(std::ostream& out, double window, const EvalOutputs& o) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%g,%.17g,%.17g\n", window, o.roc.auc,
                  o.thresholds.rows[o.thresholds.chosen].accuracy);
    out << buf;
}

int cmd_phantom(const fs::path& out_dir, std::uint64_t seed, std::size_t benign,
                std::size_t malignant) {
    CohortSpec spec = CohortSpec::defaults();
    spec.seed = seed;
    spec.benign.count = benign;
    spec.malignant.count = malignant;
    spec.validate();
    fs::create_directories(out_dir);
    log_line("generating cohort of " + std::to_string(benign + malignant) + " masses");
    generate_cohort(spec, out_dir);
    return 0;
}

int cmd_images(const fs::path& input, const std::string& ann_path,
               const std::string& window_spec, const fs::path& out_dir) {
    const auto windows = parse_windows(window_spec);
    const EnvelopeImage env = load_envelope_or_rf(input);
    if (!ann_path.empty()) load_annotations(ann_path); // validate only
    for (double w : windows) {
        const WindowPlan plan =
            plan_windows(env.geometry, env.values.rows(), env.values.cols(), w);
        log_line("window " + std::to_string(w) + " mm: " + std::to_string(plan.out_rows) +
                 "x" + std::to_string(plan.out_cols) + " map");
        const ParametricMapSet maps = generate_maps(env, plan);
        const fs::path dir = windows.size() == 1 ? out_dir : out_dir / window_dir_name(w);
        write_maps(maps, w, dir);
    }
    return 0;
}

int cmd_features(const std::string& manifest_path, const std::string& maps_dir,
                 const std::string& ann_path, const fs::path& out_csv, double window_mm,
                 std::size_t jobs) {
    if (!manifest_path.empty()) {
        const CohortManifest manifest = load_manifest(manifest_path);
        log_line("extracting features for " + std::to_string(manifest.entries.size()) +
                 " masses");
        const FeatureTable table = extract_features(manifest, window_mm, jobs);
        write_feature_table(table, out_csv);
        return 0;
    }
    if (maps_dir.empty() || ann_path.empty())
        throw std::invalid_argument("need either --manifest or both --maps and --ann");

    const AnnotationSet ann = load_annotations(ann_path);
    ParametricMapSet maps;
    for (std::size_t i = 0; i < kAllMapKinds.size(); ++i)
        maps.maps[i] =
            import_raw_image(fs::path(maps_dir) /
                             (map_kind_tag(kAllMapKinds[i]) + ".pmap.raw"));
    const FeatureVector fv =
        assemble_feature_vector(maps, ann, morphometric_features(ann.lesion_contour));

    FeatureTable table;
    if (fs::exists(out_csv)) table = read_feature_table(out_csv);
    table.rows.push_back(fv);
    write_feature_table(table, out_csv);
    return 0;
}

int cmd_evaluate(const fs::path& features_csv, const fs::path& out_dir, EvalConfig cfg) {
    const FeatureTable table = read_feature_table(features_csv);
    run_eval(table, cfg, out_dir);
    return 0;
}

int cmd_run(const std::string& manifest_path, const fs::path& out_dir,
            const std::string& window_spec, EvalConfig cfg, std::size_t jobs) {
    const auto windows = parse_windows(window_spec);
    const CohortManifest manifest = load_manifest(manifest_path);
    fs::create_directories(out_dir);

    std::ostringstream sweep;
    sweep << "window_mm,auc,accuracy\n";
    for (double w : windows) {
        log_line("window " + std::to_string(w) + " mm");
        const FeatureTable table = extract_features(manifest, w, jobs);
        const fs::path dir = windows.size() == 1 ? out_dir : out_dir / window_dir_name(w);
        fs::create_directories(dir);
        write_feature_table(table, dir / "features.csv");
        cfg.window_mm = w;
        const EvalFiles ef = run_eval(table, cfg, dir);
        append_sweep_row(sweep, w, ef.outputs);
    }
    write_text(sweep.str(), out_dir / "sweep.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantitative ultrasound breast-mass classification toolkit"};
    app.require_subcommand(1);

    // phantom
    auto* phantom = app.add_subcommand("phantom", "generate a synthetic speckle cohort");
    std::string ph_out;
    std::uint64_t ph_seed = 42;
    std::size_t ph_benign = 104, ph_malignant = 26;
    phantom->add_option("--out", ph_out, "output directory")->required();
    phantom->add_option("--seed", ph_seed, "cohort seed");
    phantom->add_option("--benign", ph_benign, "benign mass count");
    phantom->add_option("--malignant", ph_malignant, "malignant mass count");

    // images
    auto* images = app.add_subcommand("images", "compute the seven parameter maps");
    std::string im_input, im_ann, im_window = "0.75", im_out;
    images->add_option("--input", im_input, "RF or envelope container (.rfraw)")->required();
    images->add_option("--ann", im_ann, "annotation file (validated if given)");
    images->add_option("--window", im_window, "window size(s) in mm, comma separated");
    images->add_option("--out", im_out, "output directory")->required();

    // features
    auto* features = app.add_subcommand("features", "extract the 72-feature vector(s)");
    std::string ft_manifest, ft_maps, ft_ann, ft_out, ft_window = "0.75";
    std::size_t ft_jobs = 1;
    features->add_option("--manifest", ft_manifest, "cohort manifest.json (batch mode)");
    features->add_option("--maps", ft_maps, "directory of exported .pmap.raw maps");
    features->add_option("--ann", ft_ann, "annotation file (with --maps)");
    features->add_option("--out", ft_out, "output features.csv")->required();
    features->add_option("--window", ft_window, "window size in mm (batch mode)");
    features->add_option("--jobs", ft_jobs, "worker threads");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "RFE-CV selection, SVM training and ROC");
    std::string ev_features, ev_out, ev_policy = "zero-fn";
    EvalConfig ev_cfg;
    bool ev_no_select = false;
    evaluate->add_option("--features", ev_features, "features.csv")->required();
    evaluate->add_option("--out", ev_out, "output directory")->required();
    evaluate->add_option("--folds", ev_cfg.folds, "cross-validation folds");
    evaluate->add_option("--svm-c", ev_cfg.svm_c, "SVM regularization C");
    evaluate->add_option("--seed", ev_cfg.seed, "fold-assignment seed");
    evaluate->add_option("--threshold-policy", ev_policy, "zero-fn | max-acc | sweep");
    evaluate->add_flag("--no-select", ev_no_select, "skip selection, use all 72 features");

    // run
    auto* run = app.add_subcommand("run", "manifest to report: the full pipeline");
    std::string rn_manifest, rn_out, rn_window = "0.75", rn_policy = "zero-fn";
    EvalConfig rn_cfg;
    bool rn_no_select = false;
    std::size_t rn_jobs = 1;
    run->add_option("--manifest", rn_manifest, "cohort manifest.json")->required();
    run->add_option("--out", rn_out, "output directory")->required();
    run->add_option("--window", rn_window, "window size(s) in mm, comma separated");
    run->add_option("--folds", rn_cfg.folds, "cross-validation folds");
    run->add_option("--svm-c", rn_cfg.svm_c, "SVM regularization C");
    run->add_option("--seed", rn_cfg.seed, "fold-assignment seed");
    run->add_option("--threshold-policy", rn_policy, "zero-fn | max-acc | sweep");
    run->add_flag("--no-select", rn_no_select, "skip selection, use all 72 features");
    run->add_option("--jobs", rn_jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (phantom->parsed())
            return cmd_phantom(ph_out, ph_seed, ph_benign, ph_malignant);
        if (images->parsed()) return cmd_images(im_input, im_ann, im_window, im_out);
        if (features->parsed())
            return cmd_features(ft_manifest, ft_maps, ft_ann, ft_out,
                                parse_windows(ft_window).at(0), ft_jobs);
        if (evaluate->parsed()) {
            ev_cfg.policy = parse_policy(ev_policy);
            ev_cfg.select = !ev_no_select;
            return cmd_evaluate(ev_features, ev_out, ev_cfg);
        }
        if (run->parsed()) {
            rn_cfg.policy = parse_policy(rn_policy);
            rn_cfg.select = !rn_no_select;
            return cmd_run(rn_manifest, rn_out, rn_window, rn_cfg, rn_jobs);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
