#include "nakascan/data_model.hpp"

#include <cmath>
#include <stdexcept>

namespace nakascan {

std::string to_string(MassLabel l) {
    return l == MassLabel::Benign ? "benign" : "malignant";
}

MassLabel mass_label_from_string(const std::string& s) {
    if (s == "benign") return MassLabel::Benign;
    if (s == "malignant") return MassLabel::Malignant;
    throw std::invalid_argument("unknown label: " + s);
}

void RfFrame::validate() const {
    if (samples.rows() < 1 || samples.cols() < 1)
        throw std::invalid_argument("RfFrame: empty sample grid");
    const auto& g = geometry;
    if (g.sampling_rate_hz <= 0.0 || g.sound_speed_m_s <= 0.0 ||
        g.axial_spacing_mm <= 0.0 || g.lateral_spacing_mm <= 0.0)
        throw std::invalid_argument("RfFrame: non-positive geometry value");
    double expected = g.sound_speed_m_s / (2.0 * g.sampling_rate_hz) * 1000.0;
    if (std::abs(g.axial_spacing_mm - expected) > 1e-9 * expected)
        throw std::invalid_argument(
            "RfFrame: axial_spacing_mm inconsistent with sampling rate and sound speed");
    if (tgc_gain.size() != samples.rows())
        throw std::invalid_argument("RfFrame: tgc length mismatch");
    for (double gn : tgc_gain)
        if (!(gn > 0.0)) throw std::invalid_argument("RfFrame: non-positive tgc gain");
}

void EnvelopeImage::validate() const {
    if (values.rows() < 1 || values.cols() < 1)
        throw std::invalid_argument("EnvelopeImage: empty grid");
    for (double v : values.data())
        if (!(v >= 0.0)) throw std::invalid_argument("EnvelopeImage: negative value");
}

std::string map_kind_tag(MapKind k) {
    switch (k) {
        case MapKind::M: return "m";
        case MapKind::Omega: return "omega";
        case MapKind::PreAlpha: return "pre_alpha";
        case MapKind::AlphaAbs: return "alpha_abs";
        case MapKind::AlphaPhase: return "alpha_phase";
        case MapKind::AlphaReal: return "alpha_real";
        case MapKind::AlphaImag: return "alpha_imag";
    }
    throw std::logic_error("map_kind_tag: invalid kind");
}

MapKind map_kind_from_tag(const std::string& tag) {
    for (MapKind k : kAllMapKinds)
        if (map_kind_tag(k) == tag) return k;
    throw std::invalid_argument("unknown map kind tag: " + tag);
}

Point2 ParametricImage::pixel_center_mm(std::size_t r, std::size_t c) const {
    // pixel spacing equals one envelope sample step, so the offset lives
    // on the same unit grid as the spacing
    Point2 p;
    p.y = (origin_offset_row_px + static_cast<double>(r)) * pixel_spacing_axial_mm;
    p.x = (origin_offset_col_px + static_cast<double>(c)) * pixel_spacing_lateral_mm;
    return p;
}

void ParametricImage::validate() const {
    if (values.rows() < 1 || values.cols() < 1)
        throw std::invalid_argument("ParametricImage: empty grid");
    if (pixel_spacing_axial_mm <= 0.0 || pixel_spacing_lateral_mm <= 0.0 || window_mm <= 0.0)
        throw std::invalid_argument("ParametricImage: non-positive spacing or window");
    for (double v : values.data()) {
        switch (kind) {
            case MapKind::M:
            case MapKind::Omega:
                if (!(v > 0.0)) throw std::invalid_argument("ParametricImage: non-positive m/omega");
                break;
            case MapKind::AlphaAbs:
            case MapKind::AlphaReal:
            case MapKind::AlphaImag:
                if (!(v >= 0.0)) throw std::invalid_argument("ParametricImage: negative alpha component");
                break;
            case MapKind::AlphaPhase:
                if (!(v >= 0.0 && v <= 1.5707963267948967))
                    throw std::invalid_argument("ParametricImage: phase outside [0, pi/2]");
                break;
            case MapKind::PreAlpha:
                break;
        }
    }
}

void AnnotationSet::validate() const {
    if (mass_id.empty()) throw std::invalid_argument("AnnotationSet: empty mass_id");
    validate_polygon(lesion_contour, "lesion_contour");
    std::string missing;
    for (const char* name : kRegionNames) {
        auto it = regions.find(name);
        if (it == regions.end()) {
            if (!missing.empty()) missing += ", ";
            missing += name;
            continue;
        }
        validate_polygon(it->second, name);
    }
    if (!missing.empty())
        throw std::invalid_argument("AnnotationSet: missing regions: " + missing);
    if (regions.size() != kRegionNames.size())
        throw std::invalid_argument("AnnotationSet: unexpected extra regions");
    const Polygon& tumor = regions.at("tumor");
    if (tumor.size() != lesion_contour.size())
        throw std::invalid_argument("AnnotationSet: tumor region must equal lesion contour");
    for (std::size_t i = 0; i < tumor.size(); ++i)
        if (tumor[i].x != lesion_contour[i].x || tumor[i].y != lesion_contour[i].y)
            throw std::invalid_argument("AnnotationSet: tumor region must equal lesion contour");
}

void ModelArtifact::validate() const {
    const std::size_t k = selected_features.size();
    if (standardizer_mean.size() != k || standardizer_sd.size() != k || weights.size() != k)
        throw std::invalid_argument("ModelArtifact: length mismatch");
    for (double sd : standardizer_sd)
        if (!(sd > 0.0)) throw std::invalid_argument("ModelArtifact: sd must be > 0");
}

} // namespace nakascan
