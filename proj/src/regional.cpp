#include "nakascan/regional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nakascan {

namespace {

struct PixelMask {
    std::size_t r0 = 0, r1 = 0, c0 = 0, c1 = 0; // half-open pixel bbox
    std::vector<bool> inside;                    // (r1-r0) x (c1-c0)

    bool at(std::size_t r, std::size_t c) const {
        if (r < r0 || r >= r1 || c < c0 || c >= c1) return false;
        return inside[(r - r0) * (c1 - c0) + (c - c0)];
    }
};

PixelMask region_mask(const ParametricImage& img, const Polygon& region) {
    const BBox bb = polygon_bbox(region);
    const std::size_t rows = img.values.rows();
    const std::size_t cols = img.values.cols();

    auto row_of = [&](double y_mm) {
        return y_mm / img.pixel_spacing_axial_mm - img.origin_offset_row_px;
    };
    auto col_of = [&](double x_mm) {
        return x_mm / img.pixel_spacing_lateral_mm - img.origin_offset_col_px;
    };

    PixelMask m;
    m.r0 = static_cast<std::size_t>(std::clamp(std::floor(row_of(bb.ymin)), 0.0,
                                               static_cast<double>(rows)));
    m.r1 = static_cast<std::size_t>(std::clamp(std::ceil(row_of(bb.ymax)) + 1.0, 0.0,
                                               static_cast<double>(rows)));
    m.c0 = static_cast<std::size_t>(std::clamp(std::floor(col_of(bb.xmin)), 0.0,
                                               static_cast<double>(cols)));
    m.c1 = static_cast<std::size_t>(std::clamp(std::ceil(col_of(bb.xmax)) + 1.0, 0.0,
                                               static_cast<double>(cols)));
    if (m.r1 <= m.r0 || m.c1 <= m.c0) {
        m.r1 = m.r0;
        m.c1 = m.c0;
        return m;
    }
    m.inside.assign((m.r1 - m.r0) * (m.c1 - m.c0), false);
    for (std::size_t r = m.r0; r < m.r1; ++r)
        for (std::size_t c = m.c0; c < m.c1; ++c)
            if (point_in_polygon(img.pixel_center_mm(r, c), region))
                m.inside[(r - m.r0) * (m.c1 - m.c0) + (c - m.c0)] = true;
    return m;
}

} // namespace

std::vector<double> pixels_in_region(const ParametricImage& img, const Polygon& region) {
    PixelMask m = region_mask(img, region);
    std::vector<double> out;
    for (std::size_t r = m.r0; r < m.r1; ++r)
        for (std::size_t c = m.c0; c < m.c1; ++c)
            if (m.at(r, c)) out.push_back(img.values(r, c));
    return out;
}

std::pair<double, double> region_stats(const ParametricImage& img, const Polygon& region) {
    std::vector<double> px = pixels_in_region(img, region);
    if (px.size() < 16)
        throw std::invalid_argument("region_stats: region maps to fewer than 16 pixels");
    double mean = 0.0;
    for (double v : px) mean += v;
    mean /= static_cast<double>(px.size());
    double var = 0.0;
    for (double v : px) var += (v - mean) * (v - mean);
    var /= static_cast<double>(px.size());
    return {mean, std::sqrt(var)};
}

RegionMeans region_means(const ParametricImage& img, const AnnotationSet& ann) {
    auto mean_of = [&](const char* name) {
        return region_stats(img, ann.regions.at(name)).first;
    };
    RegionMeans rm;
    rm.mean_tumor_posterior = mean_of("tumor_posterior");
    rm.mean_right_posterior = mean_of("right_posterior");
    rm.mean_left_posterior = mean_of("left_posterior");
    rm.mean_tumor = mean_of("tumor");
    const double lat_l = mean_of("left_lateral");
    const double lat_r = mean_of("right_lateral");
    rm.mean_lateral_avg = 0.5 * (lat_l + lat_r);
    rm.mean_posterior_avg = 0.5 * (rm.mean_left_posterior + rm.mean_right_posterior);

    const Point2 c_lp = polygon_centroid(ann.regions.at("left_posterior"));
    const Point2 c_rp = polygon_centroid(ann.regions.at("right_posterior"));
    const Point2 c_ll = polygon_centroid(ann.regions.at("left_lateral"));
    const Point2 c_rl = polygon_centroid(ann.regions.at("right_lateral"));
    const Point2 c_tp = polygon_centroid(ann.regions.at("tumor_posterior"));
    const Point2 c_t = polygon_centroid(ann.regions.at("tumor"));
    const Point2 c_pn{0.5 * (c_lp.x + c_rp.x), 0.5 * (c_lp.y + c_rp.y)};
    const Point2 c_an{0.5 * (c_ll.x + c_rl.x), 0.5 * (c_ll.y + c_rl.y)};
    rm.d1_mm = std::hypot(c_pn.x - c_an.x, c_pn.y - c_an.y);
    rm.d2_mm = std::hypot(c_tp.x - c_t.x, c_tp.y - c_t.y);
    if (rm.d1_mm <= 0.0 || rm.d2_mm <= 0.0)
        throw std::invalid_argument("region_means: coincident region centroids");

    rm.lesion_axial_thickness_mm = polygon_bbox(ann.lesion_contour).height();
    if (rm.lesion_axial_thickness_mm <= 0.0)
        throw std::invalid_argument("region_means: zero lesion thickness");
    return rm;
}

double fnpa(const ParametricImage& img, const Polygon& lesion) {
    PixelMask m = region_mask(img, lesion);
    const std::size_t rows = img.values.rows();
    const std::size_t cols = img.values.cols();
    double sum_fp1 = 0.0, sum_x = 0.0;
    std::size_t count = 0;
    for (std::size_t r = std::max<std::size_t>(m.r0, 1); r < std::min(m.r1, rows - 1); ++r) {
        for (std::size_t c = std::max<std::size_t>(m.c0, 1); c < std::min(m.c1, cols - 1); ++c) {
            if (!m.at(r, c)) continue;
            const double x = img.values(r, c);
            const double fp1 = 0.25 * (std::abs(x - img.values(r - 1, c)) +
                                       std::abs(x - img.values(r, c - 1)) +
                                       std::abs(x - img.values(r + 1, c)) +
                                       std::abs(x - img.values(r, c + 1)));
            sum_fp1 += fp1;
            sum_x += std::abs(x); // magnitude: signed maps can have zero mean
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("fnpa: empty lesion interior");
    if (sum_fp1 <= 0.0) return 0.0; // flat lesion convention
    return sum_fp1 / sum_x; // sum_x > 0 whenever any fp1 > 0
}

double hurst_fd(const ParametricImage& img, const Polygon& lesion) {
    PixelMask m = region_mask(img, lesion);
    constexpr std::size_t B = 7;
    const std::size_t rows = img.values.rows();
    const std::size_t cols = img.values.cols();

    double slope_sum = 0.0;
    std::size_t block_count = 0;
    for (std::size_t r0 = m.r0; r0 + B <= std::min(m.r1, rows); ++r0) {
        for (std::size_t c0 = m.c0; c0 + B <= std::min(m.c1, cols); ++c0) {
            bool full = true;
            for (std::size_t r = r0; full && r < r0 + B; ++r)
                for (std::size_t c = c0; c < c0 + B; ++c)
                    if (!m.at(r, c)) { full = false; break; }
            if (!full) continue;

            // mean absolute difference at axial/lateral lags 1..3
            double delta[3] = {0.0, 0.0, 0.0};
            for (std::size_t d = 1; d <= 3; ++d) {
                double sum = 0.0;
                std::size_t pairs = 0;
                for (std::size_t r = r0; r < r0 + B; ++r)
                    for (std::size_t c = c0; c + d < c0 + B; ++c) {
                        sum += std::abs(img.values(r, c) - img.values(r, c + d));
                        ++pairs;
                    }
                for (std::size_t c = c0; c < c0 + B; ++c)
                    for (std::size_t r = r0; r + d < r0 + B; ++r) {
                        sum += std::abs(img.values(r, c) - img.values(r + d, c));
                        ++pairs;
                    }
                delta[d - 1] = sum / static_cast<double>(pairs);
            }

            double slope = 0.0;
            if (delta[0] > 0.0 && delta[1] > 0.0 && delta[2] > 0.0) {
                const double lx[3] = {std::log(1.0), std::log(2.0), std::log(3.0)};
                const double ly[3] = {std::log(delta[0]), std::log(delta[1]), std::log(delta[2])};
                const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
                const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
                double sxy = 0.0, sxx = 0.0;
                for (int i = 0; i < 3; ++i) {
                    sxy += (lx[i] - mx) * (ly[i] - my);
                    sxx += (lx[i] - mx) * (lx[i] - mx);
                }
                slope = sxy / sxx;
            }
            slope_sum += slope;
            ++block_count;
        }
    }
    if (block_count == 0)
        throw std::invalid_argument("hurst_fd: no complete 7x7 block inside lesion");
    return slope_sum / static_cast<double>(block_count);
}

double cooccurrence_contrast(const ParametricImage& img) {
    const std::size_t rows = img.values.rows();
    const std::size_t cols = img.values.cols();
    if (rows * cols < 2 || cols < 2)
        throw std::invalid_argument("cooccurrence_contrast: image too small");

    double lo = img.values.data().front(), hi = lo;
    for (double v : img.values.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) return 0.0; // constant image

    constexpr int kLevels = 64;
    auto quantize = [&](double v) {
        int q = static_cast<int>(std::floor((v - lo) / (hi - lo) * kLevels));
        return std::min(q, kLevels - 1);
    };

    // symmetric co-occurrence at offset (0,1); contrast needs only the
    // pair histogram of level differences
    double total = 0.0;
    double weighted = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            const int a = quantize(img.values(r, c));
            const int b = quantize(img.values(r, c + 1));
            const double d = static_cast<double>(a - b);
            weighted += 2.0 * d * d; // both (a,b) and (b,a)
            total += 2.0;
        }
    return weighted / total;
}

double shadow_normal(const RegionMeans& means) {
    if (means.lesion_axial_thickness_mm <= 0.0)
        throw std::invalid_argument("shadow_normal: zero lesion thickness");
    const double shadow = means.mean_tumor_posterior -
                          0.5 * (means.mean_right_posterior + means.mean_left_posterior);
    return shadow / means.lesion_axial_thickness_mm;
}

double relative_absorption(const RegionMeans& means) {
    if (means.d1_mm <= 0.0 || means.d2_mm <= 0.0)
        throw std::invalid_argument("relative_absorption: coincident centroids");
    return (means.mean_posterior_avg - means.mean_lateral_avg) / means.d1_mm -
           (means.mean_tumor_posterior - means.mean_tumor) / means.d2_mm;
}

std::pair<double, double> margin_features(const ParametricImage& img, const Polygon& lesion) {
    const std::size_t rows = img.values.rows();
    const std::size_t cols = img.values.cols();

    // lesion polygon in pixel-unit coordinates (x = col, y = row)
    Polygon lesion_px;
    lesion_px.reserve(lesion.size());
    for (const auto& p : lesion)
        lesion_px.push_back({p.x / img.pixel_spacing_lateral_mm - img.origin_offset_col_px,
                             p.y / img.pixel_spacing_axial_mm - img.origin_offset_row_px});

    auto grad_mag = [&](std::size_t r, std::size_t c) {
        double gr, gc;
        if (r == 0) gr = img.values(r + 1, c) - img.values(r, c);
        else if (r == rows - 1) gr = img.values(r, c) - img.values(r - 1, c);
        else gr = 0.5 * (img.values(r + 1, c) - img.values(r - 1, c));
        if (c == 0) gc = img.values(r, c + 1) - img.values(r, c);
        else if (c == cols - 1) gc = img.values(r, c) - img.values(r, c - 1);
        else gc = 0.5 * (img.values(r, c + 1) - img.values(r, c - 1));
        return std::hypot(gr, gc);
    };

    const BBox bb = polygon_bbox(lesion_px);
    const auto r_lo = static_cast<std::size_t>(std::max(0.0, std::floor(bb.ymin - 1.0)));
    const auto r_hi = std::min(rows, static_cast<std::size_t>(std::max(0.0, std::ceil(bb.ymax + 2.0))));
    const auto c_lo = static_cast<std::size_t>(std::max(0.0, std::floor(bb.xmin - 1.0)));
    const auto c_hi = std::min(cols, static_cast<std::size_t>(std::max(0.0, std::ceil(bb.xmax + 2.0))));

    double band_sum = 0.0;
    std::size_t band_count = 0;
    double inside_sum = 0.0;
    std::size_t inside_count = 0;
    for (std::size_t r = r_lo; r < r_hi; ++r) {
        for (std::size_t c = c_lo; c < c_hi; ++c) {
            const Point2 p{static_cast<double>(c), static_cast<double>(r)};
            if (point_polygon_boundary_distance(p, lesion_px) <= 0.5) {
                band_sum += grad_mag(r, c);
                ++band_count;
            }
            if (point_in_polygon(p, lesion_px)) {
                inside_sum += std::abs(img.values(r, c)); // signed maps: magnitude
                ++inside_count;
            }
        }
    }
    if (band_count == 0)
        throw std::invalid_argument("margin_features: empty boundary band");
    if (inside_count == 0)
        throw std::invalid_argument("margin_features: empty lesion interior");
    const double margin_area = band_sum / static_cast<double>(band_count);
    // an identically-zero interior (possible on the alpha component maps)
    // gets the flat convention rather than an undefined ratio
    const double margin_gradient = inside_sum > 0.0 ? band_sum / inside_sum : 0.0;
    return {margin_area, margin_gradient};
}

FeatureVector assemble_feature_vector(const ParametricMapSet& maps,
                                      const AnnotationSet& ann,
                                      const std::vector<double>& contour_features) {
    if (contour_features.size() != 9)
        throw std::invalid_argument("assemble_feature_vector: expected 9 contour features");
    for (const auto& m : maps.maps)
        if (!m.values.same_shape(maps.maps[0].values))
            throw std::invalid_argument("assemble_feature_vector: map geometry mismatch");

    std::vector<double> values(contour_features);
    values.reserve(kFeatureCount);
    const Polygon& lesion = ann.lesion_contour;

    for (MapKind k : kAllMapKinds) {
        const ParametricImage& img = maps.map(k);
        const std::string tag = map_kind_tag(k);
        auto guarded = [&](const char* feature, auto&& fn) {
            try {
                return fn();
            } catch (const std::exception& e) {
                throw std::invalid_argument("feature " + tag + "." + feature + ": " + e.what());
            }
        };
        const auto stats = guarded("echogenicity", [&] { return region_stats(img, lesion); });
        const RegionMeans rm = guarded("shadow_normal", [&] { return region_means(img, ann); });
        values.push_back(stats.first);
        values.push_back(stats.second);
        values.push_back(guarded("fnpa", [&] { return fnpa(img, lesion); }));
        values.push_back(guarded("hurst", [&] { return hurst_fd(img, lesion); }));
        values.push_back(guarded("shadow_normal", [&] { return shadow_normal(rm); }));
        values.push_back(guarded("relative_absorption", [&] { return relative_absorption(rm); }));
        values.push_back(guarded("cooc_contrast", [&] { return cooccurrence_contrast(img); }));
        const auto margins = guarded("margin_area", [&] { return margin_features(img, lesion); });
        values.push_back(margins.first);
        values.push_back(margins.second);
    }
    return FeatureVector(ann.mass_id, ann.label, std::move(values));
}

} // namespace nakascan
