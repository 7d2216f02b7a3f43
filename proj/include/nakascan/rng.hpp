#pragma once

#include <cstdint>

namespace nakascan {

/// Deterministic RNG with a fixed algorithm so that seeded streams are
/// identical across platforms and standard-library versions
/// (std::gamma_distribution and friends are implementation-defined).
/// Core generator is xoshiro256**, seeded via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream for a sub-task; (seed, index) fully determine it.
    static Rng substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();

    /// Uniform in (0, 1) — safe for logarithms.
    double uniform_open();

    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller (both draws consumed, one cached).
    double normal();

    /// Gamma(shape, scale) via Marsaglia-Tsang, with the U^{1/a} boost
    /// for shape < 1.
    double gamma(double shape, double scale);

    /// Fisher-Yates shuffle of [0, n) index vector.
    template <typename Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_u64() % i);
            auto tmp = v[i - 1];
            v[i - 1] = v[j];
            v[j] = tmp;
        }
    }

private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace nakascan
