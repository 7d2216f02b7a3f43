#include "nakascan/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nakascan/io.hpp"
#include "nakascan/rng.hpp"

namespace nakascan {

std::vector<double> sample_nakagami_envelope(const NakagamiParams& p, std::size_t n,
                                             std::uint64_t seed) {
    if (!(p.m > 0.0) || !(p.omega > 0.0))
        throw std::invalid_argument("sample_nakagami_envelope: invalid parameters");
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = std::sqrt(rng.gamma(p.m, p.omega / p.m));
    return out;
}

Polygon make_lesion_contour(const LesionShape& shape, const Point2& center_mm) {
    Polygon poly;
    if (std::holds_alternative<SmoothEllipse>(shape)) {
        const auto& e = std::get<SmoothEllipse>(shape);
        poly.reserve(e.vertices);
        for (std::size_t i = 0; i < e.vertices; ++i) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(e.vertices);
            poly.push_back({center_mm.x + e.semi_axis_x_mm * std::cos(t),
                            center_mm.y + e.semi_axis_y_mm * std::sin(t)});
        }
    } else {
        const auto& s = std::get<SpiculatedStar>(shape);
        poly.reserve(s.vertices);
        for (std::size_t i = 0; i < s.vertices; ++i) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(s.vertices);
            const double r = s.base_radius_mm *
                             (1.0 + s.amplitude * std::sin(static_cast<double>(s.spikes) * t));
            poly.push_back({center_mm.x + r * std::cos(t),
                            center_mm.y + s.axial_scale * r * std::sin(t)});
        }
    }
    return poly;
}

FrameGeometry SceneSpec::geometry() const {
    FrameGeometry g;
    g.sampling_rate_hz = sampling_rate_hz;
    g.sound_speed_m_s = sound_speed_m_s;
    g.axial_spacing_mm = axial_spacing_mm();
    g.lateral_spacing_mm = lateral_spacing_mm;
    return g;
}

std::map<std::string, Polygon> derive_rois(const Polygon& lesion_contour,
                                           double image_width_mm, double image_height_mm) {
    const BBox bb = polygon_bbox(lesion_contour);
    const double w = bb.width();
    const double h = bb.height();
    if (bb.xmin - w < 0.0 || bb.xmax + w > image_width_mm ||
        bb.ymin - h / 2.0 < 0.0 || bb.ymax + h / 2.0 > image_height_mm)
        throw std::invalid_argument("derive_rois: insufficient clearance around lesion");

    auto rect = [](double x0, double x1, double y0, double y1) {
        return Polygon{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    };

    std::map<std::string, Polygon> regions;
    regions["tumor"] = lesion_contour;
    regions["tumor_anterior"] = rect(bb.xmin, bb.xmax, bb.ymin - h / 2.0, bb.ymin);
    regions["tumor_posterior"] = rect(bb.xmin, bb.xmax, bb.ymax, bb.ymax + h / 2.0);
    regions["left_anterior"] = rect(bb.xmin - w, bb.xmin, bb.ymin - h / 2.0, bb.ymin);
    regions["left_lateral"] = rect(bb.xmin - w, bb.xmin, bb.ymin, bb.ymax);
    regions["left_posterior"] = rect(bb.xmin - w, bb.xmin, bb.ymax, bb.ymax + h / 2.0);
    regions["right_anterior"] = rect(bb.xmax, bb.xmax + w, bb.ymin - h / 2.0, bb.ymin);
    regions["right_lateral"] = rect(bb.xmax, bb.xmax + w, bb.ymin, bb.ymax);
    regions["right_posterior"] = rect(bb.xmax, bb.xmax + w, bb.ymax, bb.ymax + h / 2.0);
    return regions;
}

std::pair<EnvelopeImage, AnnotationSet> synthesize_scene(const SceneSpec& spec) {
    if (!(spec.shadow_multiplier > 0.0 && spec.shadow_multiplier <= 1.0))
        throw std::invalid_argument("synthesize_scene: shadow multiplier outside (0, 1]");
    const Polygon contour = make_lesion_contour(spec.shape, spec.lesion_center_mm);
    const double width_mm = static_cast<double>(spec.cols) * spec.lateral_spacing_mm;
    const double height_mm = static_cast<double>(spec.rows) * spec.axial_spacing_mm();
    const BBox bb = polygon_bbox(contour);

    AnnotationSet ann;
    ann.mass_id = spec.mass_id;
    ann.label = spec.label;
    ann.lesion_contour = contour;
    ann.regions = derive_rois(contour, width_mm, height_mm);
    ann.validate();

    EnvelopeImage env;
    env.values = Grid2D(spec.rows, spec.cols);
    env.geometry = spec.geometry();

    Rng rng = Rng::substream(spec.seed, 0);
    for (std::size_t r = 0; r < spec.rows; ++r) {
        const double y = static_cast<double>(r) * env.geometry.axial_spacing_mm;
        for (std::size_t c = 0; c < spec.cols; ++c) {
            const double x = static_cast<double>(c) * spec.lateral_spacing_mm;
            NakagamiParams p = spec.background;
            if (point_in_polygon({x, y}, contour)) {
                p = spec.lesion;
            } else if (spec.shadow_multiplier < 1.0 && y >= bb.ymax &&
                       x >= bb.xmin && x <= bb.xmax) {
                p.omega *= spec.shadow_multiplier;
            }
            env.values(r, c) = std::sqrt(rng.gamma(p.m, p.omega / p.m));
        }
    }
    return {std::move(env), std::move(ann)};
}

RfFrame modulate_rf(const EnvelopeImage& env, double carrier_fraction_of_nyquist) {
    if (!(carrier_fraction_of_nyquist > 0.0 && carrier_fraction_of_nyquist < 1.0))
        throw std::invalid_argument("modulate_rf: carrier fraction must be in (0, 1)");
    RfFrame frame;
    frame.samples = Grid2D(env.values.rows(), env.values.cols());
    frame.geometry = env.geometry;
    frame.tgc_gain.assign(env.values.rows(), 1.0);
    const double omega = std::numbers::pi * carrier_fraction_of_nyquist; // rad/sample
    for (std::size_t r = 0; r < env.values.rows(); ++r)
        for (std::size_t c = 0; c < env.values.cols(); ++c)
            frame.samples(r, c) = env.values(r, c) * std::cos(omega * static_cast<double>(r));
    return frame;
}

CohortSpec CohortSpec::defaults() {
    CohortSpec spec;
    spec.seed = 42;
    spec.scene_template = SceneSpec{};
    spec.scene_template.rows = 520;
    spec.scene_template.cols = 90;

    spec.benign.count = 104;
    spec.benign.m_lo = 0.9;
    spec.benign.m_hi = 1.3;
    spec.benign.omega_lo = 0.9;
    spec.benign.omega_hi = 1.1;
    spec.benign.shadow_lo = spec.benign.shadow_hi = 1.0;
    spec.benign.spiculated = false;
    spec.benign.aspect_lo = 0.5;
    spec.benign.aspect_hi = 0.75;

    spec.malignant.count = 26;
    spec.malignant.m_lo = 0.45;
    spec.malignant.m_hi = 0.65;
    spec.malignant.omega_lo = 0.55;
    spec.malignant.omega_hi = 0.75;
    spec.malignant.shadow_lo = 0.5;
    spec.malignant.shadow_hi = 0.8;
    spec.malignant.spiculated = true;
    spec.malignant.spike_amplitude_lo = 0.15;
    spec.malignant.spike_amplitude_hi = 0.3;
    spec.malignant.aspect_lo = 0.9;
    spec.malignant.aspect_hi = 1.3;
    return spec;
}

void CohortSpec::validate() const {
    if (benign.count < 1 || malignant.count < 1)
        throw std::invalid_argument("CohortSpec: counts must be >= 1");
    auto check = [](const ClassRecipe& r, const char* cls) {
        if (!(r.m_lo > 0.0 && r.m_hi >= r.m_lo))
            throw std::invalid_argument(std::string("CohortSpec: bad m range for ") + cls);
        if (!(r.omega_lo > 0.0 && r.omega_hi >= r.omega_lo))
            throw std::invalid_argument(std::string("CohortSpec: bad omega range for ") + cls);
        if (!(r.shadow_lo > 0.0 && r.shadow_hi <= 1.0 && r.shadow_hi >= r.shadow_lo))
            throw std::invalid_argument(std::string("CohortSpec: bad shadow range for ") + cls);
        if (!(r.aspect_lo > 0.0 && r.aspect_hi >= r.aspect_lo))
            throw std::invalid_argument(std::string("CohortSpec: bad aspect range for ") + cls);
    };
    check(benign, "benign");
    check(malignant, "malignant");
    if (scene_template.rows < 64 || scene_template.cols < 16)
        throw std::invalid_argument("CohortSpec: scene too small");
}

SceneSpec scene_for_mass(const CohortSpec& spec, std::size_t mass_index) {
    const std::size_t total = spec.benign.count + spec.malignant.count;
    if (mass_index >= total)
        throw std::out_of_range("scene_for_mass: index outside cohort");
    const bool is_benign = mass_index < spec.benign.count;
    const ClassRecipe& recipe = is_benign ? spec.benign : spec.malignant;

    Rng rng = Rng::substream(spec.seed, 1000 + mass_index);
    SceneSpec scene = spec.scene_template;
    scene.seed = spec.seed ^ (0x9e3779b97f4a7c15ULL * (mass_index + 1));
    char id[32];
    std::snprintf(id, sizeof(id), "mass_%04zu", mass_index);
    scene.mass_id = id;
    scene.label = is_benign ? MassLabel::Benign : MassLabel::Malignant;
    scene.lesion = {rng.uniform(recipe.m_lo, recipe.m_hi),
                    rng.uniform(recipe.omega_lo, recipe.omega_hi)};
    scene.shadow_multiplier = rng.uniform(recipe.shadow_lo, recipe.shadow_hi);

    const double lateral_semi = rng.uniform(1.2, 1.8);
    const double aspect = rng.uniform(recipe.aspect_lo, recipe.aspect_hi);
    if (recipe.spiculated) {
        SpiculatedStar star;
        star.base_radius_mm = lateral_semi;
        star.spikes = 8 + static_cast<std::size_t>(rng.next_u64() % 7); // 8..14
        star.amplitude = rng.uniform(recipe.spike_amplitude_lo, recipe.spike_amplitude_hi);
        star.axial_scale = aspect;
        scene.shape = star;
    } else {
        SmoothEllipse ellipse;
        ellipse.semi_axis_x_mm = lateral_semi;
        ellipse.semi_axis_y_mm = lateral_semi * aspect;
        scene.shape = ellipse;
    }
    scene.lesion_center_mm = {
        static_cast<double>(scene.cols) * scene.lateral_spacing_mm / 2.0,
        static_cast<double>(scene.rows) * scene.axial_spacing_mm() / 2.0};
    return scene;
}

CohortManifest generate_cohort(const CohortSpec& spec, const std::filesystem::path& out_dir) {
    spec.validate();
    std::filesystem::create_directories(out_dir);

    CohortManifest manifest;
    const std::size_t total = spec.benign.count + spec.malignant.count;
    for (std::size_t i = 0; i < total; ++i) {
        const SceneSpec scene = scene_for_mass(spec, i);
        auto [env, ann] = synthesize_scene(scene);

        CohortEntry entry;
        entry.mass_id = scene.mass_id;
        entry.label = scene.label;
        entry.lesion_truth = scene.lesion;
        entry.shadow_multiplier = scene.shadow_multiplier;
        entry.envelope_path = out_dir / (scene.mass_id + ".rfraw");
        entry.annotation_path = out_dir / (scene.mass_id + ".ann.json");
        save_envelope(env, entry.envelope_path);
        save_annotations(ann, entry.annotation_path);
        manifest.entries.push_back(std::move(entry));
    }
    save_manifest(manifest, out_dir / "manifest.json");
    return manifest;
}

} // namespace nakascan
