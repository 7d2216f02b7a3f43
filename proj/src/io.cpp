#include "nakascan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nakascan/phantom.hpp"

namespace nakascan {

using nlohmann::json;

namespace {

std::filesystem::path rf_sidecar_path(const std::filesystem::path& raw_path) {
    std::filesystem::path p = raw_path;
    p.replace_extension(".rfmeta.json");
    return p;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing file: " + path.string());
    return json::parse(in);
}

void write_json_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
}

void write_f32_le(std::ostream& out, double v) {
    float f = static_cast<float>(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    unsigned char b[4] = {static_cast<unsigned char>(bits & 0xff),
                          static_cast<unsigned char>((bits >> 8) & 0xff),
                          static_cast<unsigned char>((bits >> 16) & 0xff),
                          static_cast<unsigned char>((bits >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

double read_f32_le(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw std::runtime_error("truncated f32 raster");
    std::uint32_t bits = static_cast<std::uint32_t>(b[0]) |
                         (static_cast<std::uint32_t>(b[1]) << 8) |
                         (static_cast<std::uint32_t>(b[2]) << 16) |
                         (static_cast<std::uint32_t>(b[3]) << 24);
    float f;
    std::memcpy(&f, &bits, 4);
    return static_cast<double>(f);
}

RfFrame load_container(const std::filesystem::path& raw_path, std::string* kind_out) {
    const json meta = read_json_file(rf_sidecar_path(raw_path));

    RfFrame frame;
    const std::size_t rows = meta.at("rows").get<std::size_t>();
    const std::size_t cols = meta.at("cols").get<std::size_t>();
    frame.geometry.sampling_rate_hz = meta.at("sampling_rate_hz").get<double>();
    frame.geometry.sound_speed_m_s = meta.at("sound_speed_m_s").get<double>();
    frame.geometry.axial_spacing_mm = meta.at("axial_spacing_mm").get<double>();
    frame.geometry.lateral_spacing_mm = meta.at("lateral_spacing_mm").get<double>();
    frame.tgc_gain = meta.at("tgc_gain").get<std::vector<double>>();
    if (kind_out) *kind_out = meta.value("kind", "rf");

    std::ifstream in(raw_path, std::ios::binary);
    if (!in) throw std::runtime_error("missing file: " + raw_path.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != rows * cols * 4)
        throw std::runtime_error("dimension mismatch: raster has " + std::to_string(bytes) +
                                 " bytes, metadata declares " + std::to_string(rows * cols * 4));
    in.seekg(0);

    // line-major: each lateral line's axial samples are contiguous
    frame.samples = Grid2D(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r)
            frame.samples(r, c) = read_f32_le(in);

    frame.validate();
    return frame;
}

void save_container(const RfFrame& frame, const std::filesystem::path& raw_path,
                    const std::string& kind) {
    frame.validate();
    json meta;
    meta["kind"] = kind;
    meta["rows"] = frame.samples.rows();
    meta["cols"] = frame.samples.cols();
    meta["sampling_rate_hz"] = frame.geometry.sampling_rate_hz;
    meta["sound_speed_m_s"] = frame.geometry.sound_speed_m_s;
    meta["axial_spacing_mm"] = frame.geometry.axial_spacing_mm;
    meta["lateral_spacing_mm"] = frame.geometry.lateral_spacing_mm;
    meta["tgc_gain"] = frame.tgc_gain;
    meta["layout"] = "line_major_f32_le";
    write_json_file(meta, rf_sidecar_path(raw_path));

    std::ofstream out(raw_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + raw_path.string());
    for (std::size_t c = 0; c < frame.samples.cols(); ++c)
        for (std::size_t r = 0; r < frame.samples.rows(); ++r)
            write_f32_le(out, frame.samples(r, c));
}

Polygon polygon_from_json(const json& j) {
    Polygon poly;
    for (const auto& v : j) poly.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return poly;
}

json polygon_to_json(const Polygon& poly) {
    json j = json::array();
    for (const auto& p : poly) j.push_back({p.x, p.y});
    return j;
}

} // namespace

RfFrame load_rf_container(const std::filesystem::path& raw_path) {
    return load_container(raw_path, nullptr);
}

void save_rf_container(const RfFrame& frame, const std::filesystem::path& raw_path) {
    save_container(frame, raw_path, "rf");
}

bool container_is_envelope(const std::filesystem::path& raw_path) {
    const json meta = read_json_file(rf_sidecar_path(raw_path));
    return meta.value("kind", "rf") == "envelope";
}

EnvelopeImage load_envelope(const std::filesystem::path& raw_path) {
    std::string kind;
    RfFrame frame = load_container(raw_path, &kind);
    if (kind != "envelope")
        throw std::runtime_error("not an envelope container: " + raw_path.string());
    EnvelopeImage env;
    env.values = std::move(frame.samples);
    env.geometry = frame.geometry;
    env.validate();
    return env;
}

void save_envelope(const EnvelopeImage& env, const std::filesystem::path& raw_path) {
    env.validate();
    RfFrame frame;
    frame.samples = env.values;
    frame.geometry = env.geometry;
    frame.tgc_gain.assign(env.values.rows(), 1.0);
    save_container(frame, raw_path, "envelope");
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    AnnotationSet ann;
    ann.mass_id = j.at("mass_id").get<std::string>();
    ann.label = mass_label_from_string(j.at("label").get<std::string>());
    ann.lesion_contour = polygon_from_json(j.at("lesion_contour"));
    for (const auto& [name, poly] : j.at("regions").items()) {
        if (std::find_if(kRegionNames.begin(), kRegionNames.end(),
                         [&](const char* n) { return name == n; }) == kRegionNames.end())
            throw std::runtime_error("unknown region name: " + name);
        ann.regions[name] = polygon_from_json(poly);
    }
    ann.validate();
    return ann;
}

void save_annotations(const AnnotationSet& ann, const std::filesystem::path& path) {
    ann.validate();
    json j;
    j["mass_id"] = ann.mass_id;
    j["label"] = to_string(ann.label);
    j["lesion_contour"] = polygon_to_json(ann.lesion_contour);
    json regions;
    for (const auto& [name, poly] : ann.regions) regions[name] = polygon_to_json(poly);
    j["regions"] = regions;
    write_json_file(j, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

FeatureTable read_feature_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty feature table");
    const auto header = split_csv_line(line);
    if (header.size() != kFeatureCount + 2)
        throw std::runtime_error("feature table must have 74 columns, found " +
                                 std::to_string(header.size()));
    if (header[0] != "mass_id" || header[1] != "label")
        throw std::runtime_error("feature table must start with mass_id,label");
    // on-disk order may be permuted; map each column to its canonical slot
    std::vector<std::size_t> slot(kFeatureCount);
    std::vector<bool> seen(kFeatureCount, false);
    for (std::size_t c = 2; c < header.size(); ++c) {
        const std::size_t idx = canonical_feature_index(header[c]); // throws on unknown
        if (seen[idx]) throw std::runtime_error("duplicate feature column: " + header[c]);
        seen[idx] = true;
        slot[c - 2] = idx;
    }

    FeatureTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != kFeatureCount + 2)
            throw std::runtime_error("row has " + std::to_string(fields.size()) +
                                     " columns, expected 74");
        std::vector<double> values(kFeatureCount);
        for (std::size_t c = 2; c < fields.size(); ++c) {
            const double v = std::stod(fields[c]);
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite value in feature table");
            values[slot[c - 2]] = v;
        }
        table.rows.emplace_back(fields[0], mass_label_from_string(fields[1]),
                                std::move(values));
    }
    return table;
}

void write_feature_table(const FeatureTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "mass_id,label";
    for (const auto& name : canonical_feature_names()) out << "," << name;
    out << "\n";
    char buf[64];
    for (const auto& row : table.rows) {
        out << row.mass_id() << "," << to_string(row.label());
        for (double v : row.values()) {
            std::snprintf(buf, sizeof(buf), "%.9g", v);
            out << "," << buf;
        }
        out << "\n";
    }
}

ModelArtifact load_model(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    ModelArtifact a;
    a.selected_features = j.at("selected_features").get<std::vector<std::string>>();
    a.standardizer_mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    a.standardizer_sd = j.at("standardizer").at("sd").get<std::vector<double>>();
    a.weights = j.at("weights").get<std::vector<double>>();
    a.bias = j.at("bias").get<double>();
    a.decision_threshold = j.at("decision_threshold").get<double>();
    if (j.at("orientation").get<std::string>() != "higher_score_means_malignant")
        throw std::runtime_error("unknown model orientation");
    a.validate();
    return a;
}

void save_model(const ModelArtifact& artifact, const std::filesystem::path& path) {
    artifact.validate();
    json j;
    j["selected_features"] = artifact.selected_features;
    j["standardizer"]["mean"] = artifact.standardizer_mean;
    j["standardizer"]["sd"] = artifact.standardizer_sd;
    j["weights"] = artifact.weights;
    j["bias"] = artifact.bias;
    j["decision_threshold"] = artifact.decision_threshold;
    j["orientation"] = "higher_score_means_malignant";
    write_json_file(j, path);
}

void save_selection(const SelectionResult& result, const std::filesystem::path& path) {
    json j;
    j["ranking"] = result.ranking;
    j["subset_scores"] = result.subset_scores;
    j["selected"] = result.selected;
    j["folds"] = result.folds;
    j["seed"] = result.seed;
    write_json_file(j, path);
}

SelectionResult load_selection(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    SelectionResult r;
    r.ranking = j.at("ranking").get<std::vector<std::string>>();
    r.subset_scores = j.at("subset_scores").get<std::vector<double>>();
    r.selected = j.at("selected").get<std::vector<std::string>>();
    r.folds = j.at("folds").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

void save_roc_csv(const RocCurve& roc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "threshold,fpr,tpr\n";
    char buf[96];
    for (const auto& p : roc.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.threshold, p.fpr, p.tpr);
        out << buf;
    }
}

void save_threshold_csv(const ThresholdReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "threshold,false_negative,true_negative,false_positive,true_positive,"
           "sensitivity,specificity,accuracy\n";
    char buf[160];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%zu,%zu,%zu,%zu,%.17g,%.17g,%.17g\n",
                      r.threshold, r.fn, r.tn, r.fp, r.tp, r.sensitivity, r.specificity,
                      r.accuracy);
        out << buf;
    }
}

void save_manifest(const CohortManifest& manifest, const std::filesystem::path& path) {
    json entries = json::array();
    for (const auto& e : manifest.entries) {
        json j;
        j["mass_id"] = e.mass_id;
        j["label"] = to_string(e.label);
        j["envelope"] = e.envelope_path.filename().string();
        j["annotation"] = e.annotation_path.filename().string();
        j["lesion_m"] = e.lesion_truth.m;
        j["lesion_omega"] = e.lesion_truth.omega;
        j["shadow_multiplier"] = e.shadow_multiplier;
        entries.push_back(j);
    }
    json root;
    root["masses"] = entries;
    write_json_file(root, path);
}

CohortManifest load_manifest(const std::filesystem::path& path) {
    const json root = read_json_file(path);
    const auto dir = path.parent_path();
    CohortManifest manifest;
    for (const auto& j : root.at("masses")) {
        CohortEntry e;
        e.mass_id = j.at("mass_id").get<std::string>();
        e.label = mass_label_from_string(j.at("label").get<std::string>());
        e.envelope_path = dir / j.at("envelope").get<std::string>();
        e.annotation_path = dir / j.at("annotation").get<std::string>();
        e.lesion_truth = {j.at("lesion_m").get<double>(), j.at("lesion_omega").get<double>()};
        e.shadow_multiplier = j.at("shadow_multiplier").get<double>();
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

} // namespace nakascan
