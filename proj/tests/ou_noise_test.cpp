// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "rsoccer/ou_noise.hpp"

namespace rsoccer {
namespace {

TEST(OuNoise, NoiselessDecay) {
    OUState s = OUState::make(1, 7, 0.025, 0.15, 0.0);
    s.x[0] = 1.0;
    const OUSample out = ou_sample(s);
    EXPECT_NEAR(out.state.x[0], 0.99625, 1e-15);
    EXPECT_NEAR(out.action[0], 0.99625, 1e-15);
}

TEST(OuNoise, MeanIsFixedPointWithoutNoise) {
    OUState s = OUState::make(3, 1, 0.025, 0.15, 0.0);
    s.mu = {0.3, -0.2, 0.0};
    s.x = s.mu;
    const OUSample out = ou_sample(s);
    EXPECT_EQ(out.state.x, s.mu);
}

TEST(OuNoise, MeanReversionStrictlyShrinksDistance) {
    OUState s = OUState::make(1, 1, 0.025, 0.15, 0.0);
    s.x[0] = -3.0;
    s.mu[0] = 0.5;
    double gap = std::abs(s.x[0] - s.mu[0]);
    std::vector<double> action;
    for (int i = 0; i < 1000; ++i) {
        ou_advance(s, action);
        const double next = std::abs(s.x[0] - s.mu[0]);
        ASSERT_LT(next, gap);
        gap = next;
    }
}

TEST(OuNoise, ActionsClampedStateNot) {
    OUState s = OUState::make(2, 1, 0.025, 0.15, 0.0);
    s.x = {4.0, -4.0};
    const OUSample out = ou_sample(s);
    EXPECT_EQ(out.action, (std::vector<double>{1.0, -1.0}));
    EXPECT_GT(out.state.x[0], 1.0);
    EXPECT_LT(out.state.x[1], -1.0);
}

TEST(OuNoise, SeedDeterminism) {
    OUState a = OUState::make(2, 99);
    OUState b = OUState::make(2, 99);
    OUState c = OUState::make(2, 100);
    std::vector<double> va, vb, vc;
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        ou_advance(a, va);
        ou_advance(b, vb);
        ou_advance(c, vc);
        ASSERT_EQ(va, vb);
        differs = differs || va != vc;
    }
    EXPECT_TRUE(differs);
}

TEST(OuNoise, SampleMatchesInPlaceAdvance) {
    OUState a = OUState::make(2, 5);
    OUState b = a;
    std::vector<double> action;
    for (int i = 0; i < 50; ++i) {
        OUSample out = ou_sample(a);
        ou_advance(b, action);
        ASSERT_EQ(out.action, action);
        a = std::move(out.state);
    }
    EXPECT_EQ(a.x, b.x);
}

TEST(OuNoise, StationaryVarianceFormula) {
    const OUState s = OUState::make(1, 0);
    const double decay = 1.0 - 0.15 * 0.025;
    EXPECT_NEAR(s.stationary_variance(), 0.04 * 0.025 / (1.0 - decay * decay), 1e-15);
    EXPECT_NEAR(s.stationary_variance(), 0.1336, 1e-4);
}

TEST(OuNoise, LagOneAutocorrelation) {
    OUState s = OUState::make(1, 2024);
    s.x[0] = std::sqrt(s.stationary_variance()) * 0.3;
    std::vector<double> action;
    constexpr int n = 100000;
    std::vector<double> xs(n);
    for (double& x : xs) {
        ou_advance(s, action);
        x = s.x[0];
    }
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < n; ++i) {
        den += (xs[i] - mean) * (xs[i] - mean);
        if (i + 1 < n) num += (xs[i] - mean) * (xs[i + 1] - mean);
    }
    EXPECT_NEAR(num / den, 1.0 - 0.15 * 0.025, 0.02);
}

}  // namespace
}  // namespace rsoccer
