#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace nakascan {

/// Nakagami envelope distribution parameters. m is the shape, omega the
/// scale (mean backscattered intensity E[R^2]).
struct NakagamiParams {
    double m = 1.0;
    double omega = 1.0;
};

inline constexpr double kMinShape = 1e-3;
inline constexpr double kMaxShape = 1e3;
inline constexpr std::size_t kMinEstimatorSamples = 16;

/// Effective-cross-section parameter set derived from (m, omega).
/// alpha is the principal square root of pre_alpha / 4; purely real for
/// pre-Rayleigh (m < 1), purely imaginary for post-Rayleigh (m > 1).
struct AlphaComponents {
    double pre_alpha = 0.0;
    double alpha_real = 0.0;
    double alpha_imag = 0.0;
    double alpha_abs = 0.0;
    double alpha_phase = 0.0; // 0 or pi/2
};

/// K-distribution equivalents. scale_b is real only in the pre-Rayleigh
/// regime (m < 1); empty otherwise.
struct KParams {
    double effective_scatterers_M = 0.0;
    std::optional<double> scale_b;
};

struct EstimatorOptions {
    std::size_t min_samples = kMinEstimatorSamples;
};

/// Moment estimator: omega = mean(R^2), m = omega^2 / popvar(R^2),
/// clamped to [1e-3, 1e3]. Zero variance maps to the upper clamp.
/// Throws on fewer than min_samples samples or an all-zero input.
NakagamiParams estimate_nakagami(std::span<const double> samples,
                                 const EstimatorOptions& opts = {});

double nakagami_pdf(double a, const NakagamiParams& p);

/// CDF via the regularized lower incomplete gamma P(m, m r^2 / omega).
double nakagami_cdf(double r, const NakagamiParams& p);

AlphaComponents derive_alpha_set(const NakagamiParams& p);

/// Throws std::domain_error when m is within 1e-9 of the Rayleigh point.
KParams k_params(const NakagamiParams& p);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

} // namespace nakascan
