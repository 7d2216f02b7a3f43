#include "nakascan/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nakascan {

using nlohmann::json;

WindowPlan plan_windows(const FrameGeometry& geometry, std::size_t env_rows,
                        std::size_t env_cols, double window_mm) {
    if (window_mm <= 0.0)
        throw std::invalid_argument("plan_windows: window_mm must be > 0");
    WindowPlan plan;
    plan.window_mm = window_mm;
    plan.axial_spacing_mm = geometry.axial_spacing_mm;
    plan.lateral_spacing_mm = geometry.lateral_spacing_mm;
    plan.window_rows = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(window_mm / geometry.axial_spacing_mm)));
    plan.window_cols = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(window_mm / geometry.lateral_spacing_mm)));
    if (plan.window_rows > env_rows || plan.window_cols > env_cols)
        throw std::invalid_argument("plan_windows: window larger than image");
    if (plan.samples_per_window() < kMinEstimatorSamples)
        throw std::invalid_argument("plan_windows: fewer than 16 samples per window");
    plan.step_rows = 1;
    plan.step_cols = 1;
    plan.out_rows = env_rows - plan.window_rows + 1;
    plan.out_cols = env_cols - plan.window_cols + 1;
    return plan;
}

const ParametricImage& ParametricMapSet::map(MapKind k) const {
    for (const auto& m : maps)
        if (m.kind == k) return m;
    throw std::logic_error("ParametricMapSet: kind not present");
}

ParametricMapSet generate_maps(const EnvelopeImage& env, const WindowPlan& plan) {
    env.validate();
    const std::size_t rows = env.values.rows();
    const std::size_t cols = env.values.cols();
    if (plan.window_rows > rows || plan.window_cols > cols ||
        plan.out_rows != rows - plan.window_rows + 1 ||
        plan.out_cols != cols - plan.window_cols + 1)
        throw std::invalid_argument("generate_maps: plan does not match envelope");

    // Integral images of intensity and squared intensity give O(1)
    // window sums; equal to the naive per-window loop within fp rounding.
    const std::size_t w = cols + 1;
    std::vector<double> s1((rows + 1) * w, 0.0), s2((rows + 1) * w, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        double row1 = 0.0, row2 = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            const double e = env.values(r, c);
            const double i = e * e;
            row1 += i;
            row2 += i * i;
            s1[(r + 1) * w + (c + 1)] = s1[r * w + (c + 1)] + row1;
            s2[(r + 1) * w + (c + 1)] = s2[r * w + (c + 1)] + row2;
        }
    }

    ParametricMapSet out;
    for (std::size_t k = 0; k < kAllMapKinds.size(); ++k) {
        auto& m = out.maps[k];
        m.kind = kAllMapKinds[k];
        m.values = Grid2D(plan.out_rows, plan.out_cols);
        m.origin_offset_row_px = (static_cast<double>(plan.window_rows) - 1.0) / 2.0;
        m.origin_offset_col_px = (static_cast<double>(plan.window_cols) - 1.0) / 2.0;
        m.pixel_spacing_axial_mm = plan.axial_spacing_mm * static_cast<double>(plan.step_rows);
        m.pixel_spacing_lateral_mm = plan.lateral_spacing_mm * static_cast<double>(plan.step_cols);
        m.window_mm = plan.window_mm;
    }

    const double n = static_cast<double>(plan.samples_per_window());
    for (std::size_t r = 0; r < plan.out_rows; ++r) {
        const std::size_t r0 = r, r1 = r + plan.window_rows;
        for (std::size_t c = 0; c < plan.out_cols; ++c) {
            const std::size_t c0 = c, c1 = c + plan.window_cols;
            const double sum1 = s1[r1 * w + c1] - s1[r0 * w + c1] - s1[r1 * w + c0] + s1[r0 * w + c0];
            const double sum2 = s2[r1 * w + c1] - s2[r0 * w + c1] - s2[r1 * w + c0] + s2[r0 * w + c0];

            double m, omega;
            if (sum1 <= 0.0) {
                // all-zero window: clamp fill, recorded for QC
                m = kMaxShape;
                omega = std::numeric_limits<double>::min();
                ++out.failed_pixels;
            } else {
                omega = sum1 / n;
                const double var = sum2 / n - omega * omega;
                m = var > 0.0 ? std::clamp(omega * omega / var, kMinShape, kMaxShape)
                              : kMaxShape;
            }
            const AlphaComponents a = derive_alpha_set({m, omega});
            out.maps[0].values(r, c) = m;
            out.maps[1].values(r, c) = omega;
            out.maps[2].values(r, c) = a.pre_alpha;
            out.maps[3].values(r, c) = a.alpha_abs;
            out.maps[4].values(r, c) = a.alpha_phase;
            out.maps[5].values(r, c) = a.alpha_real;
            out.maps[6].values(r, c) = a.alpha_imag;
        }
    }
    return out;
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& raw_path) {
    std::filesystem::path p = raw_path;
    p.replace_extension(".json");
    return p;
}

} // namespace

void export_image(const ParametricImage& img, const std::filesystem::path& path,
                  ImageExportFormat format) {
    img.validate();
    if (format == ImageExportFormat::RawF32) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("export_image: cannot open " + path.string());
        for (double v : img.values.data()) {
            float f = static_cast<float>(v);
            std::uint32_t bits;
            std::memcpy(&bits, &f, 4);
            unsigned char b[4] = {static_cast<unsigned char>(bits & 0xff),
                                  static_cast<unsigned char>((bits >> 8) & 0xff),
                                  static_cast<unsigned char>((bits >> 16) & 0xff),
                                  static_cast<unsigned char>((bits >> 24) & 0xff)};
            out.write(reinterpret_cast<const char*>(b), 4);
        }
        json side;
        side["kind"] = map_kind_tag(img.kind);
        side["rows"] = img.values.rows();
        side["cols"] = img.values.cols();
        side["origin_offset_px"] = {img.origin_offset_row_px, img.origin_offset_col_px};
        side["pixel_spacing_mm"] = {img.pixel_spacing_axial_mm, img.pixel_spacing_lateral_mm};
        side["window_mm"] = img.window_mm;
        std::ofstream sout(sidecar_path(path));
        sout << side.dump(2) << "\n";
        return;
    }

    // binary PGM (P5), min-max quantized
    double lo = img.values.data().front(), hi = lo;
    for (double v : img.values.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_image: cannot open " + path.string());
    out << "P5\n" << img.values.cols() << " " << img.values.rows() << "\n255\n";
    for (double v : img.values.data()) {
        int level = hi > lo
            ? static_cast<int>(std::lround((v - lo) / (hi - lo) * 255.0))
            : 128;
        level = std::clamp(level, 0, 255);
        unsigned char b = static_cast<unsigned char>(level);
        out.write(reinterpret_cast<const char*>(&b), 1);
    }
}

ParametricImage import_raw_image(const std::filesystem::path& path) {
    std::ifstream sin(sidecar_path(path));
    if (!sin) throw std::runtime_error("import_raw_image: missing sidecar for " + path.string());
    json side = json::parse(sin);

    ParametricImage img;
    img.kind = map_kind_from_tag(side.at("kind").get<std::string>());
    const std::size_t rows = side.at("rows").get<std::size_t>();
    const std::size_t cols = side.at("cols").get<std::size_t>();
    img.origin_offset_row_px = side.at("origin_offset_px").at(0).get<double>();
    img.origin_offset_col_px = side.at("origin_offset_px").at(1).get<double>();
    img.pixel_spacing_axial_mm = side.at("pixel_spacing_mm").at(0).get<double>();
    img.pixel_spacing_lateral_mm = side.at("pixel_spacing_mm").at(1).get<double>();
    img.window_mm = side.at("window_mm").get<double>();

    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("import_raw_image: cannot open " + path.string());
    std::vector<double> values(rows * cols);
    for (auto& v : values) {
        unsigned char b[4];
        if (!in.read(reinterpret_cast<char*>(b), 4))
            throw std::runtime_error("import_raw_image: truncated raster");
        std::uint32_t bits = static_cast<std::uint32_t>(b[0]) |
                             (static_cast<std::uint32_t>(b[1]) << 8) |
                             (static_cast<std::uint32_t>(b[2]) << 16) |
                             (static_cast<std::uint32_t>(b[3]) << 24);
        float f;
        std::memcpy(&f, &bits, 4);
        v = static_cast<double>(f);
    }
    if (in.get() != std::char_traits<char>::eof())
        throw std::runtime_error("import_raw_image: raster larger than declared dimensions");
    img.values = Grid2D(rows, cols, std::move(values));
    return img;
}

} // namespace nakascan
