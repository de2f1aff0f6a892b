#include <gtest/gtest.h>

#include <cmath>

#include "aquanim/error.hpp"
#include "aquanim/interpolators.hpp"
#include "oracle.hpp"

using namespace aquanim;

TEST(Ease, Examples) {
    EXPECT_EQ(ease(0.0).value(), 0.0);
    EXPECT_EQ(ease(1.0).value(), 1.0);
    EXPECT_EQ(ease(0.5).value(), 0.5);
    EXPECT_DOUBLE_EQ(ease(0.25).value(), 0.15625);
}

TEST(Ease, MatchesCubicAndIsPointSymmetric) {
    for (int i = 0; i <= 1000; ++i) {
        const double t = i / 1000.0;
        EXPECT_NEAR(ease(t).value(), oracle::smoothstep(t), 1e-15);
        EXPECT_NEAR(ease(t).value() + ease(1.0 - t).value(), 1.0, 1e-15);
    }
}

TEST(Ease, FlatAtEndpoints) {
    const double h = 1e-4;
    EXPECT_LE(std::abs((ease(h).value() - ease(0.0).value()) / h), 1e-3);
    EXPECT_LE(std::abs((ease(1.0).value() - ease(1.0 - h).value()) / h), 1e-3);
    // Interior slope follows 6t - 6t^2.
    for (double t : {0.2, 0.5, 0.8}) {
        const double fd = (ease(t + h).value() - ease(t - h).value()) / (2 * h);
        EXPECT_NEAR(fd, 6 * t - 6 * t * t, 1e-6);
    }
}

TEST(Ease, RejectsOutsideUnitInterval) {
    for (double bad : {-0.01, 1.01, std::nan("")}) {
        try {
            (void)ease(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::DomainError);
        }
    }
    EXPECT_THROW(EasedTime(2.0), Error);
}

TEST(Lerp, Examples) {
    EXPECT_DOUBLE_EQ(lerp(1, 4, EasedTime(0.5)), 2.5);
    for (double u : {0.0, 0.3, 1.0}) EXPECT_EQ(lerp(7, 7, EasedTime(u)), 7.0);
    EXPECT_EQ(lerp(0, 10, EasedTime(1.0)), 10.0);
    EXPECT_EQ(lerp(-3, 10, EasedTime(0.0)), -3.0);
}

TEST(HyperbolicExtent, Examples) {
    EXPECT_NEAR(hyperbolic_extent(4, 2.5), 1.6, 1e-15);
    EXPECT_DOUBLE_EQ(hyperbolic_extent(4, 1), 4.0);
    EXPECT_DOUBLE_EQ(hyperbolic_extent(4, 4), 1.0);
    try {
        (void)hyperbolic_extent(4, 1e-13);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateExtent);
    }
}

TEST(HyperbolicExtent, ProductIsArea) {
    oracle::Gen gen(21);
    for (int trial = 0; trial < 200; ++trial) {
        const double area = gen.uniform(0.01, 100);
        const double l0 = gen.uniform(0.05, 20);
        const double l1 = gen.uniform(0.05, 20);
        for (int i = 0; i <= 100; ++i) {
            const double l = lerp(l0, l1, ease(i / 100.0));
            EXPECT_NEAR(l * hyperbolic_extent(area, l), area, 1e-12 * area);
        }
    }
}

TEST(CenteredPair, Examples) {
    auto p = centered_pair(2, 2, 1.6, EasedTime(0.5));
    EXPECT_NEAR(p.lo, 1.2, 1e-15);
    EXPECT_NEAR(p.hi, 2.8, 1e-15);
    for (double u : {0.0, 0.4, 1.0}) {
        p = centered_pair(0, 0, 4, EasedTime(u));
        EXPECT_EQ(p.lo, -2.0);
        EXPECT_EQ(p.hi, 2.0);
    }
    p = centered_pair(2, 2, 4, EasedTime(0.0));
    EXPECT_EQ(p.lo, 0.0);
    EXPECT_EQ(p.hi, 4.0);
}

TEST(CenteredPair, ExtentAndMidpoint) {
    oracle::Gen gen(22);
    for (int i = 0; i < 1000; ++i) {
        const double c0 = gen.uniform(-10, 10);
        const double c1 = gen.uniform(-10, 10);
        const double h = gen.uniform(0.01, 10);
        const double u = gen.uniform(0, 1);
        const auto p = centered_pair(c0, c1, h, EasedTime(u));
        EXPECT_NEAR(p.hi - p.lo, h, 1e-12);
        EXPECT_NEAR(0.5 * (p.lo + p.hi), (1 - u) * c0 + u * c1, 1e-12);
    }
}
