#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "scbf/philox.hpp"

using namespace scbf;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // reference vectors cross-checked against an independent implementation
    auto r0 = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(r0[0] == 0x6627e8d5u);
    CHECK(r0[1] == 0xe169c58du);
    CHECK(r0[2] == 0xbc57ac4cu);
    CHECK(r0[3] == 0x9b00dbd8u);

    auto r1 = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                         {0xffffffffu, 0xffffffffu});
    CHECK(r1[0] == 0x408f276du);
    CHECK(r1[1] == 0x41c83b0eu);
    CHECK(r1[2] == 0xa20bc7c6u);
    CHECK(r1[3] == 0x6d5451fdu);

    auto r2 = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                         {0xa4093822u, 0x299f31d0u});
    CHECK(r2[0] == 0xd16cfe09u);
    CHECK(r2[1] == 0x94fdccebu);
    CHECK(r2[2] == 0x5001e420u);
    CHECK(r2[3] == 0x24126ea1u);
}

TEST_CASE("draws are pure functions of the address") {
    GaussianStream a(123456789ull, 7, StreamPurpose::Noise);
    GaussianStream b(123456789ull, 7, StreamPurpose::Noise);
    for (int step = 0; step < 5; ++step)
        for (int slot = 0; slot < 20; ++slot)
            CHECK(a.normal(step, slot) == b.normal(step, slot));
}

TEST_CASE("distinct paths, purposes and steps decorrelate") {
    GaussianStream a(42, 0, StreamPurpose::Noise);
    GaussianStream b(42, 1, StreamPurpose::Noise);
    GaussianStream c(42, 0, StreamPurpose::InitialData);
    std::set<double> seen;
    for (int s = 0; s < 50; ++s) {
        seen.insert(a.normal(0, s));
        seen.insert(b.normal(0, s));
        seen.insert(c.normal(0, s));
        seen.insert(a.normal(1, s));
    }
    CHECK(seen.size() == 200);  // no collisions across addresses
}

TEST_CASE("normals have the right two moments and tails") {
    GaussianStream gs(2024, 0, StreamPurpose::Battery);
    const int n = 200000;
    double sum = 0, sum2 = 0, sum4 = 0;
    for (int i = 0; i < n; ++i) {
        double z = gs.normal(0, i);
        sum += z;
        sum2 += z * z;
        sum4 += z * z * z * z;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    double kurt = sum4 / n / (var * var);
    CHECK(std::abs(mean) < 5.0 / std::sqrt(double(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
    CHECK(kurt == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("uniforms land in [0,1) and look uniform") {
    GaussianStream gs(99, 3, StreamPurpose::Probe);
    const int n = 100000;
    int buckets[10] = {};
    for (int i = 0; i < n; ++i) {
        double u = gs.uniform(0, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        ++buckets[static_cast<int>(u * 10.0)];
    }
    // chi-square at 10 cells, 1% critical value 21.67
    double chi2 = 0;
    for (int b : buckets) {
        double e = n / 10.0;
        chi2 += (b - e) * (b - e) / e;
    }
    CHECK(chi2 < 21.67);
}
