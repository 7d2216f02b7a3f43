#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "nakascan/rng.hpp"

using namespace nakascan;

TEST_CASE("same seed gives an identical stream") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different substreams diverge") {
    Rng a = Rng::substream(7, 0);
    Rng b = Rng::substream(7, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("uniform stays in range") {
    Rng r(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = r.uniform_open();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        const double w = r.uniform(2.0, 3.0);
        CHECK(w >= 2.0);
        CHECK(w <= 3.0);
    }
}

TEST_CASE("normal moments") {
    Rng r(17);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gamma moments for small and large shape") {
    for (double shape : {0.5, 3.0}) {
        Rng r(23);
        const double scale = 2.0;
        const int n = 200000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = r.gamma(shape, scale);
            CHECK(x >= 0.0);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double var = sum2 / n - mean * mean;
        CHECK(mean == doctest::Approx(shape * scale).epsilon(0.03));
        CHECK(var == doctest::Approx(shape * scale * scale).epsilon(0.05));
    }
}

TEST_CASE("shuffle is a permutation and seed-stable") {
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    Rng r(31);
    r.shuffle(v);
    std::vector<int> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);

    std::vector<int> w(50);
    std::iota(w.begin(), w.end(), 0);
    Rng r2(31);
    r2.shuffle(w);
    CHECK(v == w);
}
