#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "nakascan/data_model.hpp"
#include "nakascan/features.hpp"
#include "nakascan/phantom.hpp"

using namespace nakascan;
using nakascan::testing::rect_polygon;

namespace {

RfFrame valid_frame() {
    RfFrame f;
    f.samples = Grid2D(16, 4, 1.0);
    f.geometry.sampling_rate_hz = 20e6;
    f.geometry.sound_speed_m_s = 1540.0;
    f.geometry.axial_spacing_mm = 1540.0 / (2.0 * 20e6) * 1000.0;
    f.geometry.lateral_spacing_mm = 0.2;
    f.tgc_gain.assign(16, 1.0);
    return f;
}

} // namespace

TEST_CASE("map kind tags round trip") {
    for (MapKind k : kAllMapKinds) CHECK(map_kind_from_tag(map_kind_tag(k)) == k);
    CHECK(map_kind_tag(MapKind::M) == "m");
    CHECK(map_kind_tag(MapKind::PreAlpha) == "pre_alpha");
    CHECK_THROWS_AS(map_kind_from_tag("bogus"), std::invalid_argument);
}

TEST_CASE("mass labels round trip") {
    CHECK(mass_label_from_string(to_string(MassLabel::Benign)) == MassLabel::Benign);
    CHECK(mass_label_from_string(to_string(MassLabel::Malignant)) == MassLabel::Malignant);
    CHECK_THROWS_AS(mass_label_from_string("suspicious"), std::invalid_argument);
}

TEST_CASE("RfFrame validation") {
    CHECK_NOTHROW(valid_frame().validate());

    RfFrame bad_tgc = valid_frame();
    bad_tgc.tgc_gain.resize(3);
    CHECK_THROWS_WITH_AS(bad_tgc.validate(), doctest::Contains("tgc length mismatch"),
                         std::invalid_argument);

    RfFrame zero_gain = valid_frame();
    zero_gain.tgc_gain[5] = 0.0;
    CHECK_THROWS_AS(zero_gain.validate(), std::invalid_argument);

    RfFrame bad_spacing = valid_frame();
    bad_spacing.geometry.axial_spacing_mm *= 1.5;
    CHECK_THROWS_AS(bad_spacing.validate(), std::invalid_argument);
}

TEST_CASE("parametric image pixel centers") {
    ParametricImage img;
    img.values = Grid2D(4, 4, 1.0);
    img.origin_offset_row_px = 2.5;
    img.origin_offset_col_px = 1.5;
    img.pixel_spacing_axial_mm = 0.1;
    img.pixel_spacing_lateral_mm = 0.2;
    img.window_mm = 0.5;
    const Point2 p = img.pixel_center_mm(0, 0);
    CHECK(p.x == doctest::Approx(0.3));
    CHECK(p.y == doctest::Approx(0.25));
    const Point2 q = img.pixel_center_mm(2, 3);
    CHECK(q.x == doctest::Approx(0.9));
    CHECK(q.y == doctest::Approx(0.45));
}

TEST_CASE("annotation validation names missing regions") {
    AnnotationSet ann;
    ann.mass_id = "t";
    ann.label = MassLabel::Benign;
    ann.lesion_contour = rect_polygon(2, 2, 4, 4);
    for (const char* name : kRegionNames)
        ann.regions[name] = rect_polygon(2, 2, 4, 4);
    ann.regions["tumor"] = ann.lesion_contour;
    CHECK_NOTHROW(ann.validate());

    AnnotationSet missing = ann;
    missing.regions.erase("tumor_posterior");
    CHECK_THROWS_WITH_AS(missing.validate(), doctest::Contains("tumor_posterior"),
                         std::invalid_argument);

    AnnotationSet mismatch = ann;
    mismatch.regions["tumor"] = rect_polygon(2, 2, 4.1, 4);
    CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);
}

TEST_CASE("canonical feature names") {
    const auto& names = canonical_feature_names();
    CHECK(names.size() == kFeatureCount);
    CHECK(names[0] == "morph.aspect_ratio");
    CHECK(names[8] == "morph.fd_hausdorff");
    CHECK(names[9] == "m.echogenicity");
    CHECK(names[17] == "m.margin_gradient");
    CHECK(names[18] == "omega.echogenicity");
    CHECK(names[71] == "alpha_imag.margin_gradient");
    for (std::size_t i = 0; i < names.size(); ++i)
        CHECK(canonical_feature_index(names[i]) == i);
    CHECK_THROWS_AS(canonical_feature_index("nope"), std::invalid_argument);
}

TEST_CASE("feature vectors of the wrong arity cannot exist") {
    std::vector<double> v71(71, 0.0), v72(72, 0.0), v73(73, 0.0);
    CHECK_THROWS_AS(FeatureVector("a", MassLabel::Benign, v71), std::invalid_argument);
    CHECK_THROWS_AS(FeatureVector("a", MassLabel::Benign, v73), std::invalid_argument);
    CHECK_NOTHROW(FeatureVector("a", MassLabel::Benign, v72));

    std::vector<double> nan72(72, 0.0);
    nan72[5] = std::nan("");
    CHECK_THROWS_AS(FeatureVector("a", MassLabel::Benign, nan72), std::invalid_argument);
}

TEST_CASE("model artifact validation") {
    ModelArtifact a;
    a.selected_features = {"morph.solidity", "m.echogenicity"};
    a.standardizer_mean = {0.5, 1.0};
    a.standardizer_sd = {1.0, 2.0};
    a.weights = {1.0, -1.0};
    CHECK_NOTHROW(a.validate());

    ModelArtifact bad_sd = a;
    bad_sd.standardizer_sd[1] = 0.0;
    CHECK_THROWS_AS(bad_sd.validate(), std::invalid_argument);

    ModelArtifact bad_len = a;
    bad_len.weights.push_back(0.0);
    CHECK_THROWS_AS(bad_len.validate(), std::invalid_argument);
}

TEST_CASE("feature table labels") {
    FeatureTable t;
    std::vector<double> v(72, 1.0);
    t.rows.emplace_back("a", MassLabel::Benign, v);
    t.rows.emplace_back("b", MassLabel::Malignant, v);
    CHECK(t.labels_pm1() == std::vector<int>{-1, 1});
    CHECK(t.column(0) == std::vector<double>{1.0, 1.0});
}
