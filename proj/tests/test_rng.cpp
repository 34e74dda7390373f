#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sbp/rng.hpp"

using sbp::Rng;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 test suite.
    auto out = Rng::philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);

    out = Rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);

    out = Rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("streams are deterministic and distinct") {
    Rng a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        const uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
    }
}

TEST_CASE("split produces unrelated streams") {
    Rng base(1, 0);
    Rng s1 = base.split(1);
    Rng s2 = base.split(2);
    std::set<uint64_t> seen;
    for (int i = 0; i < 50; ++i) {
        seen.insert(s1.next_u64());
        seen.insert(s2.next_u64());
    }
    CHECK(seen.size() == 100);
}

TEST_CASE("uniform doubles land in [0,1) with sane mean") {
    Rng r(7, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = r.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("normal deviates have unit variance") {
    Rng r(11, 3);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = r.next_normal();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("next_below is unbiased over a small modulus") {
    Rng r(5, 1);
    int counts[7] = {0};
    const int n = 70000;
    for (int i = 0; i < n; ++i) counts[r.next_below(7)]++;
    for (int k = 0; k < 7; ++k) CHECK(std::abs(counts[k] - n / 7) < 500);
}
