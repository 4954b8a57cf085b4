#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "tsne/rng.hpp"

using namespace tsne;

TEST_CASE("same seed, same sequence, bit for bit") {
    Pcg32 a(123), b(123);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u32() == b.next_u32());
    Pcg32 c(123), d(123);
    for (int i = 0; i < 100; ++i) {
        double x = c.next_gaussian(), y = d.next_gaussian();
        CHECK(std::memcmp(&x, &y, sizeof x) == 0);
    }
}

TEST_CASE("different seeds and streams decorrelate") {
    Pcg32 a(1), b(2), c(1, 7);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 64; ++i) {
        std::uint32_t x = a.next_u32();
        if (x == b.next_u32()) ++same_ab;
        if (x == c.next_u32()) ++same_ac;
    }
    CHECK(same_ab < 4);
    CHECK(same_ac < 4);
}

TEST_CASE("uniform doubles live in [0, 1)") {
    Pcg32 g(5);
    for (int i = 0; i < 10000; ++i) {
        double v = g.next_double();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("bounded draws stay in range and cover it") {
    Pcg32 g(9);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 7000; ++i) ++seen[g.next_below(7)];
    for (int c : seen) CHECK(c > 700); // each value near 1000 expected
    CHECK_THROWS_AS(g.next_below(0), NumericError);
}

TEST_CASE("gaussian moments are roughly standard") {
    Pcg32 g(77);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = g.next_gaussian();
        s += v;
        s2 += v * v;
    }
    double mean = s / n, var = s2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}
