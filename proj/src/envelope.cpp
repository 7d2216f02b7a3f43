#include "nakascan/envelope.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nakascan {

RfFrame apply_tgc(const RfFrame& frame, const TgcPolicy& policy) {
    frame.validate();
    if (policy.mode == TgcMode::None) return frame;
    RfFrame out = frame;
    for (std::size_t r = 0; r < out.samples.rows(); ++r) {
        const double inv = 1.0 / out.tgc_gain[r];
        for (std::size_t c = 0; c < out.samples.cols(); ++c)
            out.samples(r, c) *= inv;
    }
    return out;
}

namespace {

// FFTW planning is not thread safe.
std::mutex g_fftw_plan_mutex;

} // namespace

EnvelopeImage detect_envelope(const RfFrame& frame) {
    frame.validate();
    const std::size_t n = frame.samples.rows();
    const std::size_t cols = frame.samples.cols();
    if (n < 8)
        throw std::invalid_argument("detect_envelope: need at least 8 axial samples");

    std::vector<std::complex<double>> buf(n), spec(n);
    fftw_plan fwd, inv;
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fwd = fftw_plan_dft_1d(static_cast<int>(n),
                               reinterpret_cast<fftw_complex*>(buf.data()),
                               reinterpret_cast<fftw_complex*>(spec.data()),
                               FFTW_FORWARD, FFTW_ESTIMATE);
        inv = fftw_plan_dft_1d(static_cast<int>(n),
                               reinterpret_cast<fftw_complex*>(spec.data()),
                               reinterpret_cast<fftw_complex*>(buf.data()),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    EnvelopeImage env;
    env.values = Grid2D(n, cols);
    env.geometry = frame.geometry;

    const std::size_t half = n / 2;
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < n; ++r) buf[r] = frame.samples(r, c);
        fftw_execute(fwd);
        // analytic signal: keep DC (and Nyquist for even n), double the
        // positive band, zero the negative band
        for (std::size_t k = 1; k < half + (n % 2); ++k)
            if (k < (n + 1) / 2) spec[k] *= 2.0;
        for (std::size_t k = half + 1; k < n; ++k) spec[k] = 0.0;
        if (n % 2 == 1)
            for (std::size_t k = (n + 1) / 2; k < n; ++k) spec[k] = 0.0;
        fftw_execute(inv);
        const double scale = 1.0 / static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r)
            env.values(r, c) = std::abs(buf[r]) * scale;
    }

    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    return env;
}

} // namespace nakascan
