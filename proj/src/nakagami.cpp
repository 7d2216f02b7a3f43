#include "nakascan/nakagami.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nakascan {

namespace {

// Series expansion of P(a,x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma_p: a must be > 0");
    if (x < 0.0) throw std::invalid_argument("gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

NakagamiParams estimate_nakagami(std::span<const double> samples,
                                 const EstimatorOptions& opts) {
    const std::size_t n = samples.size();
    if (n < opts.min_samples)
        throw std::invalid_argument("estimate_nakagami: too few samples");

    double sum_i = 0.0;
    bool any_positive = false;
    for (double r : samples) {
        if (r < 0.0) throw std::invalid_argument("estimate_nakagami: negative sample");
        if (r > 0.0) any_positive = true;
        sum_i += r * r;
    }
    if (!any_positive)
        throw std::invalid_argument("estimate_nakagami: all samples zero");

    const double omega = sum_i / static_cast<double>(n);
    double var = 0.0;
    for (double r : samples) {
        double d = r * r - omega;
        var += d * d;
    }
    var /= static_cast<double>(n); // population variance, matches E[.] notation

    double m = var > 0.0 ? (omega * omega) / var : kMaxShape;
    m = std::clamp(m, kMinShape, kMaxShape);
    return {m, omega};
}

double nakagami_pdf(double a, const NakagamiParams& p) {
    if (a < 0.0) throw std::invalid_argument("nakagami_pdf: a must be >= 0");
    if (a == 0.0) return p.m > 0.5 ? 0.0 : (p.m == 0.5 ? std::sqrt(2.0 / (std::numbers::pi * p.omega)) : std::numeric_limits<double>::infinity());
    double log_pdf = std::log(2.0) + p.m * std::log(p.m) - std::lgamma(p.m) -
                     p.m * std::log(p.omega) + (2.0 * p.m - 1.0) * std::log(a) -
                     p.m * a * a / p.omega;
    return std::exp(log_pdf);
}

double nakagami_cdf(double r, const NakagamiParams& p) {
    if (r < 0.0) throw std::invalid_argument("nakagami_cdf: r must be >= 0");
    if (r == 0.0) return 0.0;
    return gamma_p(p.m, p.m * r * r / p.omega);
}

AlphaComponents derive_alpha_set(const NakagamiParams& p) {
    AlphaComponents a;
    a.pre_alpha = p.omega * (1.0 - p.m) / (2.0 * p.m);
    if (a.pre_alpha >= 0.0) {
        a.alpha_real = 0.5 * std::sqrt(a.pre_alpha);
        a.alpha_imag = 0.0;
        a.alpha_abs = a.alpha_real;
        a.alpha_phase = 0.0;
    } else {
        a.alpha_real = 0.0;
        a.alpha_imag = 0.5 * std::sqrt(-a.pre_alpha);
        a.alpha_abs = a.alpha_imag;
        a.alpha_phase = std::numbers::pi / 2.0;
    }
    return a;
}

KParams k_params(const NakagamiParams& p) {
    if (std::abs(p.m - 1.0) <= 1e-9)
        throw std::domain_error("k_params: K-equivalence undefined at Rayleigh point");
    KParams k;
    k.effective_scatterers_M = 2.0 * p.m / (1.0 - p.m);
    if (p.m < 1.0)
        k.scale_b = 2.0 * std::sqrt(2.0 * p.m / (p.omega * (1.0 - p.m)));
    return k;
}

} // namespace nakascan
